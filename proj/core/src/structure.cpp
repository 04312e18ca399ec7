#include "structlab/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace structlab {

Limits& limits() {
    static Limits instance;
    return instance;
}

namespace {

std::string tuple_str(const Tuple& t) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ")";
    return out.str();
}

void check_size_cap(const FinStructure& s, const char* op) {
    if (s.size() > limits().size_cap)
        throw StructureError(std::string(op) + ": structure of size " + std::to_string(s.size()) +
                             " exceeds size cap " + std::to_string(limits().size_cap));
}

/// Strong-embedding check for an injective total map.
bool is_strong_map(const FinStructure& a, const FinStructure& c, const Tuple& map) {
    std::vector<int> inv(static_cast<size_t>(c.size()), -1);
    for (int i = 0; i < a.size(); ++i) inv[static_cast<size_t>(map[static_cast<size_t>(i)])] = i;
    for (int rel = 0; rel < a.signature().relation_count(); ++rel) {
        for (const Tuple& t : a.table(rel)) {
            Tuple img(t.size());
            for (size_t j = 0; j < t.size(); ++j) img[j] = map[static_cast<size_t>(t[j])];
            if (!c.holds(rel, img)) return false;
        }
        for (const Tuple& t : c.table(rel)) {
            Tuple pre(t.size());
            bool in_image = true;
            for (size_t j = 0; j < t.size() && in_image; ++j) {
                int p = inv[static_cast<size_t>(t[j])];
                if (p < 0)
                    in_image = false;
                else
                    pre[j] = p;
            }
            if (in_image && !a.holds(rel, pre)) return false;
        }
    }
    return true;
}

void emit_combinations(int n, int k, const std::function<void(const Tuple&)>& f) {
    Tuple cur(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            f(cur);
            return;
        }
        for (int v = start; v <= n - (k - depth); ++v) {
            cur[static_cast<size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

FinStructure::FinStructure(std::shared_ptr<const Signature> sig, int size, std::vector<Table> tables)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
    validate_and_canonicalize();
}

FinStructure::FinStructure(const Signature& sig, int size, std::vector<Table> tables)
    : FinStructure(std::make_shared<Signature>(sig), size, std::move(tables)) {}

void FinStructure::validate_and_canonicalize() {
    if (size_ < 0) throw StructureError("negative domain size");
    tables_.resize(static_cast<size_t>(sig_->relation_count()));
    for (int rel = 0; rel < sig_->relation_count(); ++rel) {
        const auto& spec = sig_->relation(rel);
        for (const Tuple& t : tables_[static_cast<size_t>(rel)]) {
            if (static_cast<int>(t.size()) != spec.arity)
                throw StructureError("tuple " + tuple_str(t) + " has wrong arity for " + spec.name);
            for (int v : t)
                if (v < 0 || v >= size_)
                    throw StructureError("tuple " + tuple_str(t) + " out of range for " + spec.name);
        }
        if (spec.flags.antireflexive) {
            for (const Tuple& t : tables_[static_cast<size_t>(rel)]) {
                for (size_t i = 0; i < t.size(); ++i)
                    for (size_t j = i + 1; j < t.size(); ++j)
                        if (t[i] == t[j])
                            throw StructureError(spec.name + " violates antireflexivity at " +
                                                 tuple_str(t));
            }
        }
        if (spec.flags.symmetric && spec.arity == 2) {
            Table closed = tables_[static_cast<size_t>(rel)];
            for (const Tuple& t : tables_[static_cast<size_t>(rel)]) closed.insert({t[1], t[0]});
            tables_[static_cast<size_t>(rel)] = std::move(closed);
        }
    }
    if (!sig_->has_order()) return;

    const int ord = sig_->order_index();
    const Table& lt = tables_[static_cast<size_t>(ord)];
    // strict, total, transitive -- checked by enumeration
    std::vector<int> below(static_cast<size_t>(size_), 0);
    for (int a = 0; a < size_; ++a) {
        if (lt.count({a, a})) throw StructureError("order is not irreflexive at " + std::to_string(a));
        for (int b = a + 1; b < size_; ++b) {
            bool ab = lt.count({a, b}) > 0, ba = lt.count({b, a}) > 0;
            if (ab == ba)
                throw StructureError("order is not a strict total order on (" + std::to_string(a) +
                                     "," + std::to_string(b) + ")");
            if (ab)
                ++below[static_cast<size_t>(b)];
            else
                ++below[static_cast<size_t>(a)];
        }
    }
    for (const Tuple& p : lt)
        for (const Tuple& q : lt)
            if (p[1] == q[0] && !lt.count({p[0], q[1]}))
                throw StructureError("order is not transitive");

    // relabel so that the order becomes 0 < 1 < ... < n-1
    std::vector<int> relabel(static_cast<size_t>(size_));
    for (int v = 0; v < size_; ++v) relabel[static_cast<size_t>(v)] = below[static_cast<size_t>(v)];
    for (int rel = 0; rel < sig_->relation_count(); ++rel) {
        Table remapped;
        for (const Tuple& t : tables_[static_cast<size_t>(rel)]) {
            Tuple nt(t.size());
            for (size_t j = 0; j < t.size(); ++j) nt[j] = relabel[static_cast<size_t>(t[j])];
            remapped.insert(std::move(nt));
        }
        tables_[static_cast<size_t>(rel)] = std::move(remapped);
    }
}

bool FinStructure::holds(int rel, const Tuple& tuple) const {
    return tables_[static_cast<size_t>(rel)].count(tuple) > 0;
}

bool FinStructure::less(int a, int b) const {
    if (!sig_->has_order()) throw StructureError("structure has no order");
    return a < b;  // canonical after construction
}

bool FinStructure::same_tables(const FinStructure& other) const {
    return size_ == other.size_ && signature() == other.signature() && tables_ == other.tables_;
}

bool Embedding::valid() const {
    if (source.signature() != target.signature()) return false;
    if (static_cast<int>(map.size()) != source.size()) return false;
    std::vector<bool> used(static_cast<size_t>(target.size()), false);
    for (int v : map) {
        if (v < 0 || v >= target.size() || used[static_cast<size_t>(v)]) return false;
        used[static_cast<size_t>(v)] = true;
    }
    return is_strong_map(source, target, map);
}

FinStructure induced_substructure(const FinStructure& c, const Tuple& subset) {
    Tuple s = subset;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s)
        if (v < 0 || v >= c.size()) throw StructureError("subset element out of range");
    std::vector<int> newpos(static_cast<size_t>(c.size()), -1);
    for (size_t i = 0; i < s.size(); ++i) newpos[static_cast<size_t>(s[i])] = static_cast<int>(i);
    std::vector<Table> tables(static_cast<size_t>(c.signature().relation_count()));
    for (int rel = 0; rel < c.signature().relation_count(); ++rel) {
        for (const Tuple& t : c.table(rel)) {
            Tuple nt(t.size());
            bool inside = true;
            for (size_t j = 0; j < t.size() && inside; ++j) {
                int p = newpos[static_cast<size_t>(t[j])];
                if (p < 0)
                    inside = false;
                else
                    nt[j] = p;
            }
            if (inside) tables[static_cast<size_t>(rel)].insert(std::move(nt));
        }
    }
    return FinStructure(c.signature_ptr(), static_cast<int>(s.size()), std::move(tables));
}

std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& c) {
    if (a.signature() != c.signature()) throw StructureError("enumerate_embeddings: signature mismatch");
    check_size_cap(c, "enumerate_embeddings");
    std::vector<Embedding> out;
    if (a.size() > c.size()) return out;
    if (a.ordered()) {
        // embeddings preserve the canonical order, so maps are increasing
        emit_combinations(c.size(), a.size(), [&](const Tuple& comb) {
            if (is_strong_map(a, c, comb)) out.push_back(Embedding{a, c, comb});
        });
        return out;
    }
    Tuple map(static_cast<size_t>(a.size()), -1);
    std::vector<bool> used(static_cast<size_t>(c.size()), false);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == a.size()) {
            if (is_strong_map(a, c, map)) out.push_back(Embedding{a, c, map});
            return;
        }
        for (int v = 0; v < c.size(); ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            map[static_cast<size_t>(depth)] = v;
            used[static_cast<size_t>(v)] = true;
            rec(depth + 1);
            used[static_cast<size_t>(v)] = false;
        }
    };
    rec(0);
    return out;
}

std::vector<Copy> enumerate_copies(const FinStructure& a, const FinStructure& c) {
    std::vector<Embedding> embs = enumerate_embeddings(a, c);
    std::vector<Copy> out;
    if (a.ordered()) {
        out.reserve(embs.size());
        for (auto& e : embs) out.push_back(Copy{e.map, std::move(e)});
        return out;
    }
    std::set<Tuple> seen;
    std::vector<std::pair<Tuple, Embedding>> keyed;
    for (auto& e : embs) {
        Tuple key = e.map;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) keyed.emplace_back(std::move(key), std::move(e));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [key, e] : keyed) out.push_back(Copy{key, std::move(e)});
    return out;
}

std::optional<Tuple> isomorphic(const FinStructure& a, const FinStructure& b) {
    if (a.signature() != b.signature()) return std::nullopt;
    if (a.size() != b.size()) return std::nullopt;
    if (a.ordered()) {
        // canonical labeling is forced by the order
        if (a.same_tables(b)) {
            Tuple id(static_cast<size_t>(a.size()));
            std::iota(id.begin(), id.end(), 0);
            return id;
        }
        return std::nullopt;
    }
    check_size_cap(a, "isomorphic");
    Tuple map(static_cast<size_t>(a.size()), -1);
    std::vector<bool> used(static_cast<size_t>(b.size()), false);
    std::optional<Tuple> found;
    std::function<void(int)> rec = [&](int depth) {
        if (found) return;
        if (depth == a.size()) {
            if (is_strong_map(a, b, map)) found = map;
            return;
        }
        for (int v = 0; v < b.size() && !found; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            map[static_cast<size_t>(depth)] = v;
            used[static_cast<size_t>(v)] = true;
            rec(depth + 1);
            used[static_cast<size_t>(v)] = false;
        }
    };
    rec(0);
    return found;
}

FinStructure ordered_sum(const std::vector<FinStructure>& parts) {
    if (parts.empty()) throw StructureError("ordered_sum of no parts");
    const auto sig = parts.front().signature_ptr();
    int total = 0;
    for (const auto& p : parts) {
        if (!p.ordered()) throw StructureError("ordered_sum: unordered part");
        if (p.signature() != *sig) throw StructureError("ordered_sum: signature mismatch");
        total += p.size();
    }
    std::vector<Table> tables(static_cast<size_t>(sig->relation_count()));
    const int ord = sig->order_index();
    int offset = 0;
    for (const auto& p : parts) {
        for (int rel = 0; rel < sig->relation_count(); ++rel) {
            if (rel == ord) continue;
            for (const Tuple& t : p.table(rel)) {
                Tuple nt(t.size());
                for (size_t j = 0; j < t.size(); ++j) nt[j] = t[j] + offset;
                tables[static_cast<size_t>(rel)].insert(std::move(nt));
            }
        }
        offset += p.size();
    }
    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j) tables[static_cast<size_t>(ord)].insert({i, j});
    return FinStructure(sig, total, std::move(tables));
}

std::vector<Tuple> automorphisms(const FinStructure& a) {
    if (a.ordered()) {
        Tuple id(static_cast<size_t>(a.size()));
        std::iota(id.begin(), id.end(), 0);
        return {id};
    }
    std::vector<Tuple> out;
    for (auto& e : enumerate_embeddings(a, a)) out.push_back(std::move(e.map));
    return out;
}

Embedding compose(const Embedding& f, const Embedding& g) {
    if (!f.target.same_tables(g.source)) throw StructureError("compose: mismatched middle structure");
    Tuple map(f.map.size());
    for (size_t i = 0; i < f.map.size(); ++i)
        map[i] = g.map[static_cast<size_t>(f.map[i])];
    return Embedding{f.source, g.target, std::move(map)};
}

FinStructure reduct(const FinStructure& s, const std::vector<std::string>& names) {
    std::vector<RelationSpec> specs;
    std::vector<Table> tables;
    std::optional<std::string> order;
    for (const auto& name : names) {
        int idx = s.signature().relation_index(name);
        if (idx < 0) throw StructureError("reduct: unknown relation '" + name + "'");
        specs.push_back(s.signature().relation(idx));
        tables.push_back(s.table(idx));
        if (s.signature().order_symbol() == name) order = name;
    }
    return FinStructure(Signature(std::move(specs), order), s.size(), std::move(tables));
}

FinStructure ordered_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    static const auto sig = std::make_shared<Signature>(Signature::ordered_graph());
    std::vector<Table> tables(2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) tables[0].insert({i, j});
    for (auto [u, v] : edges) tables[1].insert({u, v});
    return FinStructure(sig, n, std::move(tables));
}

FinStructure linear_order(int n) {
    static const auto sig = std::make_shared<Signature>(Signature::linear_order());
    std::vector<Table> tables(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) tables[0].insert({i, j});
    return FinStructure(sig, n, std::move(tables));
}

}  // namespace structlab
