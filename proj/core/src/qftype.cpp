#include "structlab/qftype.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace structlab {

namespace {

int pow_int(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// enumerate all var-index tuples of the given length over 0..m-1, lexicographic
void for_each_var_tuple(int m, int len, const std::function<void(const Tuple&)>& f) {
    Tuple cur(static_cast<size_t>(len), 0);
    while (true) {
        f(cur);
        int pos = len - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == m - 1) {
            cur[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<size_t>(pos)];
    }
}

}  // namespace

QfType::QfType(std::shared_ptr<const Signature> sig, int arity, std::vector<uint64_t> words)
    : sig_(std::move(sig)), arity_(arity), words_(std::move(words)) {}

int QfType::atom_count(const Signature& sig, int arity) {
    int count = arity * (arity - 1) / 2;
    for (int rel = 0; rel < sig.relation_count(); ++rel)
        count += pow_int(arity, sig.relation(rel).arity);
    return count;
}

int QfType::eq_index(int i, int j) const {
    // pair (i,j), i<j, pair-lexicographic
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += arity_ - 1 - a;
    return idx + (j - i - 1);
}

int QfType::rel_index(int rel, const Tuple& var_tuple) const {
    int idx = arity_ * (arity_ - 1) / 2;
    for (int r = 0; r < rel; ++r) idx += pow_int(arity_, sig_->relation(r).arity);
    int offset = 0;
    for (int v : var_tuple) offset = offset * arity_ + v;
    return idx + offset;
}

bool QfType::eq_atom(int i, int j) const { return bit(eq_index(i, j)); }
bool QfType::rel_atom(int rel, const Tuple& var_tuple) const { return bit(rel_index(rel, var_tuple)); }

bool QfType::operator==(const QfType& other) const {
    return arity_ == other.arity_ && *sig_ == *other.sig_ && words_ == other.words_;
}

bool QfType::operator<(const QfType& other) const {
    if (arity_ != other.arity_) return arity_ < other.arity_;
    return words_ < other.words_;
}

bool QfType::order_consistent() const {
    if (!sig_->has_order()) return true;
    const int ord = sig_->order_index();
    const int m = arity_;
    auto eq = [&](int i, int j) {
        if (i == j) return true;
        return eq_atom(std::min(i, j), std::max(i, j));
    };
    auto lt = [&](int i, int j) { return rel_atom(ord, {i, j}); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (eq(i, j)) {
                if (lt(i, j) || lt(j, i)) return false;  // irreflexive on classes
            } else if (i < j) {
                if (lt(i, j) == lt(j, i)) return false;  // total on distinct classes
            }
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                if (lt(i, j) && lt(j, k) && !lt(i, k)) return false;
    // equality must be transitive as well
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                if (eq(i, j) && eq(j, k) && !eq(i, k)) return false;
    return true;
}

std::string QfType::to_string() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first) out << ", ";
        first = false;
        out << s;
    };
    for (int i = 0; i < arity_; ++i)
        for (int j = i + 1; j < arity_; ++j)
            if (eq_atom(i, j))
                emit("x" + std::to_string(i + 1) + "=x" + std::to_string(j + 1));
    for (int rel = 0; rel < sig_->relation_count(); ++rel) {
        for_each_var_tuple(arity_, sig_->relation(rel).arity, [&](const Tuple& vt) {
            if (rel_atom(rel, vt)) {
                std::string s = sig_->relation(rel).name + "(";
                for (size_t j = 0; j < vt.size(); ++j)
                    s += (j ? ",x" : "x") + std::to_string(vt[j] + 1);
                emit(s + ")");
            }
        });
    }
    out << "}";
    return out.str();
}

QfType qftype_of(const Tuple& tuple, const FinStructure& s) {
    const int m = static_cast<int>(tuple.size());
    if (m == 0) return QfType(s.signature_ptr(), 0, {});
    for (int v : tuple)
        if (v < 0 || v >= s.size()) throw StructureError("qftype_of: element out of range");
    const int nbits = QfType::atom_count(s.signature(), m);
    std::vector<uint64_t> words(static_cast<size_t>((nbits + 63) / 64), 0);
    int idx = 0;
    auto set_bit = [&](bool b) {
        if (b) words[static_cast<size_t>(idx) / 64] |= (uint64_t{1} << (idx % 64));
        ++idx;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            set_bit(tuple[static_cast<size_t>(i)] == tuple[static_cast<size_t>(j)]);
    for (int rel = 0; rel < s.signature().relation_count(); ++rel) {
        for_each_var_tuple(m, s.signature().relation(rel).arity, [&](const Tuple& vt) {
            Tuple elems(vt.size());
            for (size_t j = 0; j < vt.size(); ++j)
                elems[j] = tuple[static_cast<size_t>(vt[j])];
            set_bit(s.holds(rel, elems));
        });
    }
    return QfType(s.signature_ptr(), m, std::move(words));
}

TypeCatalog type_catalog(const FinStructure& source, int arity) {
    if (arity < 1) throw StructureError("type_catalog: arity must be >= 1");
    TypeCatalog cat{source, arity, {}};
    Tuple cur(static_cast<size_t>(arity));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == arity) {
            cat.entries.insert(qftype_of(cur, source));
            return;
        }
        for (int v = start; v <= source.size() - (arity - depth); ++v) {
            cur[static_cast<size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return cat;
}

QfType diagram_type(const FinStructure& c) {
    if (!c.ordered()) throw StructureError("diagram_type: structure is not ordered");
    Tuple all(static_cast<size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i) all[static_cast<size_t>(i)] = i;
    return qftype_of(all, c);
}

std::optional<Tuple> realize_type(const QfType& t, const FinStructure& s) {
    if (t.signature() != s.signature()) throw StructureError("realize_type: signature mismatch");
    const int m = t.arity();
    Tuple cur(static_cast<size_t>(m), 0);
    if (m == 0) return cur;
    if (s.size() == 0) return std::nullopt;
    while (true) {
        if (qftype_of(cur, s) == t) return cur;
        int pos = m - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == s.size() - 1) {
            cur[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) return std::nullopt;
        ++cur[static_cast<size_t>(pos)];
    }
}

}  // namespace structlab
