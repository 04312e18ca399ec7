#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace structlab {

/// Per-relation closure markers checked or applied at construction time.
struct RelationFlags {
    bool symmetric = false;
    bool antireflexive = false;
};

struct RelationSpec {
    std::string name;
    int arity = 0;
    RelationFlags flags;
};

/// A finite relational signature, optionally with a designated binary
/// relation interpreted as a strict linear order.
class Signature {
public:
    Signature() = default;
    Signature(std::vector<RelationSpec> relations, std::optional<std::string> order_symbol);

    const std::vector<RelationSpec>& relations() const { return relations_; }
    const std::optional<std::string>& order_symbol() const { return order_symbol_; }

    bool has_order() const { return order_symbol_.has_value(); }
    int relation_index(const std::string& name) const;  // -1 when absent
    int order_index() const { return order_index_; }    // -1 when unordered
    const RelationSpec& relation(int idx) const { return relations_.at(static_cast<size_t>(idx)); }
    int relation_count() const { return static_cast<int>(relations_.size()); }

    bool operator==(const Signature& other) const;
    bool operator!=(const Signature& other) const { return !(*this == other); }

    std::string to_string() const;

    /// The signature of finite ordered graphs: {<, R} with R symmetric and antireflexive.
    static const Signature& ordered_graph();
    /// Pure linear orders: {<} alone.
    static const Signature& linear_order();

private:
    std::vector<RelationSpec> relations_;
    std::optional<std::string> order_symbol_;
    int order_index_ = -1;
};

/// Error raised on invalid structures, signatures or arguments.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace structlab
