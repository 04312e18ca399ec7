#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "structlab/structure.hpp"

namespace structlab {

/// A complete quantifier-free type of an m-tuple: every atomic formula over
/// x_1..x_m is decided, equality pattern included. Canonically encoded as a
/// packed boolean word sequence -- equality of types is word equality.
///
/// Atom order: equality atoms x_i = x_j for i < j (pair-lexicographic), then
/// relation-major, tuple-lexicographic over all variable-index tuples.
class QfType {
public:
    QfType() = default;
    QfType(std::shared_ptr<const Signature> sig, int arity, std::vector<uint64_t> words);

    const Signature& signature() const { return *sig_; }
    std::shared_ptr<const Signature> signature_ptr() const { return sig_; }
    int arity() const { return arity_; }
    const std::vector<uint64_t>& words() const { return words_; }

    bool eq_atom(int i, int j) const;                     // x_i = x_j, i < j, 0-based
    bool rel_atom(int rel, const Tuple& var_tuple) const; // R(x_{t_0},...)

    bool operator==(const QfType& other) const;
    bool operator!=(const QfType& other) const { return !(*this == other); }
    bool operator<(const QfType& other) const;

    /// The induced order on distinct variable classes is a strict total order
    /// (only meaningful for ordered signatures).
    bool order_consistent() const;

    std::string to_string() const;

    static int atom_count(const Signature& sig, int arity);

private:
    std::shared_ptr<const Signature> sig_;
    int arity_ = 0;
    std::vector<uint64_t> words_;

    int eq_index(int i, int j) const;
    int rel_index(int rel, const Tuple& var_tuple) const;
    bool bit(int idx) const { return (words_[static_cast<size_t>(idx) / 64] >> (idx % 64)) & 1u; }
};

/// The set of complete quantifier-free m-types realized in a structure by
/// increasing tuples of distinct elements.
struct TypeCatalog {
    FinStructure source;
    int arity = 0;
    std::set<QfType> entries;
};

QfType qftype_of(const Tuple& tuple, const FinStructure& s);
TypeCatalog type_catalog(const FinStructure& source, int arity);
QfType diagram_type(const FinStructure& c);
std::optional<Tuple> realize_type(const QfType& t, const FinStructure& s);

}  // namespace structlab
