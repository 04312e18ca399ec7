#include "structlab/signature.hpp"

#include <set>
#include <sstream>

namespace structlab {

Signature::Signature(std::vector<RelationSpec> relations, std::optional<std::string> order_symbol)
    : relations_(std::move(relations)), order_symbol_(std::move(order_symbol)) {
    std::set<std::string> seen;
    for (const auto& rel : relations_) {
        if (rel.arity < 1)
            throw StructureError("relation '" + rel.name + "' has arity < 1");
        if (!seen.insert(rel.name).second)
            throw StructureError("duplicate relation name '" + rel.name + "'");
    }
    if (order_symbol_) {
        order_index_ = relation_index(*order_symbol_);
        if (order_index_ < 0)
            throw StructureError("order symbol '" + *order_symbol_ + "' is not a declared relation");
        if (relations_[static_cast<size_t>(order_index_)].arity != 2)
            throw StructureError("order symbol '" + *order_symbol_ + "' must be binary");
    }
}

int Signature::relation_index(const std::string& name) const {
    for (size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Signature::operator==(const Signature& other) const {
    if (order_symbol_ != other.order_symbol_) return false;
    if (relations_.size() != other.relations_.size()) return false;
    for (size_t i = 0; i < relations_.size(); ++i) {
        const auto& a = relations_[i];
        const auto& b = other.relations_[i];
        if (a.name != b.name || a.arity != b.arity) return false;
        if (a.flags.symmetric != b.flags.symmetric) return false;
        if (a.flags.antireflexive != b.flags.antireflexive) return false;
    }
    return true;
}

std::string Signature::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& rel : relations_) {
        if (!first) out << ", ";
        first = false;
        out << rel.name << ":" << rel.arity;
        if (order_symbol_ && rel.name == *order_symbol_) out << " order";
        if (rel.flags.symmetric) out << " symmetric";
        if (rel.flags.antireflexive) out << " antireflexive";
    }
    return out.str();
}

const Signature& Signature::ordered_graph() {
    static const Signature sig(
        {RelationSpec{"<", 2, {}}, RelationSpec{"R", 2, {true, true}}}, std::string("<"));
    return sig;
}

const Signature& Signature::linear_order() {
    static const Signature sig({RelationSpec{"<", 2, {}}}, std::string("<"));
    return sig;
}

}  // namespace structlab
