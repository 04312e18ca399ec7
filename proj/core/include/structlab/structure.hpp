#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "structlab/signature.hpp"

namespace structlab {

/// Size guard for exhaustive operations. Default keeps full enumeration
/// semantics honest on desk-scale inputs.
struct Limits {
    int size_cap = 64;
};
Limits& limits();

using Tuple = std::vector<int>;
using Table = std::set<Tuple>;

/// A finite relational structure with domain 0..n-1. Immutable after
/// construction. When the signature carries an order symbol, structures are
/// canonicalized so that the order is 0 < 1 < ... < n-1; ordered isomorphism
/// then reduces to table equality.
class FinStructure {
public:
    FinStructure() : sig_(std::make_shared<Signature>()) {}
    FinStructure(std::shared_ptr<const Signature> sig, int size, std::vector<Table> tables);
    FinStructure(const Signature& sig, int size, std::vector<Table> tables);

    const Signature& signature() const { return *sig_; }
    std::shared_ptr<const Signature> signature_ptr() const { return sig_; }
    int size() const { return size_; }
    const std::vector<Table>& tables() const { return tables_; }
    const Table& table(int rel) const { return tables_.at(static_cast<size_t>(rel)); }

    bool holds(int rel, const Tuple& tuple) const;
    bool ordered() const { return sig_->has_order(); }
    /// Order comparison; requires an order symbol. After canonicalization this
    /// is just a < b on domain indices.
    bool less(int a, int b) const;

    bool same_tables(const FinStructure& other) const;

private:
    std::shared_ptr<const Signature> sig_;
    int size_ = 0;
    std::vector<Table> tables_;

    void validate_and_canonicalize();
};

/// A strong (induced) embedding: tuples hold in the source iff their images
/// hold in the target.
struct Embedding {
    FinStructure source;
    FinStructure target;
    Tuple map;  // map[i] = image of i

    bool valid() const;
};

/// An equivalence class of embeddings modulo source automorphisms,
/// identified by its image vertex
/// set plus the lexicographically least representative embedding.
struct Copy {
    Tuple vertex_set;  // sorted
    Embedding rep;
};

FinStructure induced_substructure(const FinStructure& c, const Tuple& subset);
std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& c);
std::vector<Copy> enumerate_copies(const FinStructure& a, const FinStructure& c);
std::optional<Tuple> isomorphic(const FinStructure& a, const FinStructure& b);
FinStructure ordered_sum(const std::vector<FinStructure>& parts);
std::vector<Tuple> automorphisms(const FinStructure& a);

/// Composition of embeddings A -> B and B -> C.
Embedding compose(const Embedding& f, const Embedding& g);

/// The reduct of a structure to a subset of its relation names. The order
/// symbol is kept only when listed.
FinStructure reduct(const FinStructure& s, const std::vector<std::string>& names);

/// An ordered graph on the chain 0 < ... < n-1 with the given undirected
/// R-edges (stored symmetrically).
FinStructure ordered_graph(int n, const std::vector<std::pair<int, int>>& edges);
/// The n-element linear order in the pure order signature.
FinStructure linear_order(int n);

}  // namespace structlab
