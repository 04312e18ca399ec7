#include "structlab/arrow.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace structlab {

namespace {

struct Incidence {
    std::vector<Copy> a_copies;
    std::vector<Copy> b_copies;
    std::vector<std::vector<int>> contained;  // per B-copy: indices of A-copies inside
};

Incidence build_incidence(const FinStructure& c, const FinStructure& b, const FinStructure& a) {
    if (a.signature() != c.signature() || b.signature() != c.signature())
        throw StructureError("arrow: signature mismatch");
    Incidence inc;
    inc.a_copies = enumerate_copies(a, c);
    inc.b_copies = enumerate_copies(b, c);
    inc.contained.resize(inc.b_copies.size());
    for (size_t bi = 0; bi < inc.b_copies.size(); ++bi) {
        const Tuple& bset = inc.b_copies[bi].vertex_set;
        for (size_t ai = 0; ai < inc.a_copies.size(); ++ai) {
            const Tuple& aset = inc.a_copies[ai].vertex_set;
            if (std::includes(bset.begin(), bset.end(), aset.begin(), aset.end()))
                inc.contained[bi].push_back(static_cast<int>(ai));
        }
    }
    return inc;
}

/// Homogeneous B-copy index under a full assignment, or -1.
int homogeneous_index(const Incidence& inc, const std::vector<int>& assignment) {
    for (size_t bi = 0; bi < inc.b_copies.size(); ++bi) {
        bool uniform = true;
        int color = 0;
        for (int ai : inc.contained[bi]) {
            int c = assignment[static_cast<size_t>(ai)];
            if (color == 0)
                color = c;
            else if (c != color) {
                uniform = false;
                break;
            }
        }
        if (uniform) return static_cast<int>(bi);
    }
    return -1;
}

/// Assignment for coloring index `idx`, copy 0 most significant (so ascending
/// indices enumerate assignments lexicographically).
std::vector<int> assignment_of_index(std::uint64_t idx, size_t copies, int k) {
    std::vector<int> a(copies, 1);
    for (size_t pos = copies; pos-- > 0;) {
        a[pos] = static_cast<int>(idx % static_cast<std::uint64_t>(k)) + 1;
        idx /= static_cast<std::uint64_t>(k);
    }
    return a;
}

std::optional<std::uint64_t> colorings_total(size_t copies, int k, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (size_t i = 0; i < copies; ++i) {
        if (total > budget / static_cast<std::uint64_t>(k) + 1) return std::nullopt;
        total *= static_cast<std::uint64_t>(k);
        if (total > budget) return std::nullopt;
    }
    return total;
}

struct SearchState {
    const Incidence* inc;
    int k;
    std::vector<int> order;       // copy indices, most-constrained first
    std::vector<int> assignment;  // by copy index; 0 = unassigned
    std::vector<std::vector<int>> copy_to_b;
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;
    bool exhausted_budget = false;

    bool monochrome_completed(int copy, int color) const {
        for (int bi : copy_to_b[static_cast<size_t>(copy)]) {
            bool all_same = true;
            for (int ai : inc->contained[static_cast<size_t>(bi)]) {
                int c = assignment[static_cast<size_t>(ai)];
                if (ai == copy) c = color;
                if (c != color) {
                    all_same = false;
                    break;
                }
            }
            if (all_same) return true;
        }
        return false;
    }

    bool search(size_t depth) {
        if (++nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        if (depth == order.size()) {
            // vacuously-homogeneous B-copies (no contained A-copy) defeat
            // every coloring
            for (const auto& sub : inc->contained)
                if (sub.empty()) return false;
            return true;
        }
        const int copy = order[depth];
        for (int color = 1; color <= k; ++color) {
            if (monochrome_completed(copy, color)) continue;
            assignment[static_cast<size_t>(copy)] = color;
            if (search(depth + 1)) return true;
            assignment[static_cast<size_t>(copy)] = 0;
            if (exhausted_budget) return false;
        }
        return false;
    }
};

std::optional<std::vector<int>> run_bad_search(const Incidence& inc, int k,
                                               const ArrowOptions& opts, bool& budget_out) {
    // a B-copy containing no A-copy is vacuously homogeneous under every
    // coloring, so no bad coloring can exist
    for (const auto& sub : inc.contained)
        if (sub.empty()) {
            budget_out = false;
            return std::nullopt;
        }
    SearchState st;
    st.inc = &inc;
    st.k = k;
    st.budget = opts.budget;
    st.assignment.assign(inc.a_copies.size(), 0);
    st.copy_to_b.resize(inc.a_copies.size());
    for (size_t bi = 0; bi < inc.contained.size(); ++bi)
        for (int ai : inc.contained[bi]) st.copy_to_b[static_cast<size_t>(ai)].push_back(static_cast<int>(bi));
    st.order.resize(inc.a_copies.size());
    for (size_t i = 0; i < st.order.size(); ++i) st.order[i] = static_cast<int>(i);
    std::stable_sort(st.order.begin(), st.order.end(), [&](int x, int y) {
        return st.copy_to_b[static_cast<size_t>(x)].size() > st.copy_to_b[static_cast<size_t>(y)].size();
    });
    bool found = st.search(0);
    budget_out = st.exhausted_budget;
    if (!found) return std::nullopt;
    return st.assignment;
}

ArrowVerdict exhaustive_check(const FinStructure& c, const FinStructure& /*b*/,
                              const FinStructure& a, int k, const Incidence& inc,
                              const ArrowOptions& opts) {
    ArrowVerdict v;
    auto total_opt = colorings_total(inc.a_copies.size(), k, opts.budget);
    if (!total_opt) {
        v.status = Status::inconclusive;
        v.detail = "coloring space exceeds budget";
        return v;
    }
    const std::uint64_t total = *total_opt;

    if (total <= opts.certificate_budget || opts.jobs <= 1) {
        std::vector<int> certs;
        const bool keep = total <= opts.certificate_budget;
        if (keep) certs.reserve(static_cast<size_t>(total));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            auto assignment = assignment_of_index(idx, inc.a_copies.size(), k);
            int hom = homogeneous_index(inc, assignment);
            if (hom < 0) {
                v.status = Status::fails;
                v.bad_coloring = Coloring{a, c, k, std::move(assignment)};
                v.colorings_checked = idx + 1;
                return v;
            }
            if (keep) certs.push_back(hom);
        }
        v.status = Status::holds;
        v.colorings_checked = total;
        if (keep) v.homogeneity_certificates = std::move(certs);
        return v;
    }

    const int jobs = std::max(1, opts.jobs);
    std::atomic<std::uint64_t> first_bad{total};
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) /
                                static_cast<std::uint64_t>(jobs);
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t]() {
            const std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t hi = std::min(total, lo + chunk);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                if (first_bad.load(std::memory_order_relaxed) <= lo) return;
                auto assignment = assignment_of_index(idx, inc.a_copies.size(), k);
                if (homogeneous_index(inc, assignment) < 0) {
                    std::uint64_t cur = first_bad.load();
                    while (idx < cur && !first_bad.compare_exchange_weak(cur, idx)) {
                    }
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    const std::uint64_t bad = first_bad.load();
    if (bad < total) {
        v.status = Status::fails;
        v.bad_coloring = Coloring{a, c, k, assignment_of_index(bad, inc.a_copies.size(), k)};
        v.colorings_checked = bad + 1;
    } else {
        v.status = Status::holds;
        v.colorings_checked = total;
    }
    return v;
}

}  // namespace

bool Coloring::valid() const {
    if (k < 1) return false;
    auto copies = enumerate_copies(a, c);
    if (assignment.size() != copies.size()) return false;
    for (int col : assignment)
        if (col < 1 || col > k) return false;
    return true;
}

std::optional<Copy> find_homogeneous(const FinStructure& b, const Coloring& coloring) {
    if (!coloring.valid()) throw StructureError("find_homogeneous: invalid coloring");
    Incidence inc = build_incidence(coloring.c, b, coloring.a);
    int hom = homogeneous_index(inc, coloring.assignment);
    if (hom < 0) return std::nullopt;
    return inc.b_copies[static_cast<size_t>(hom)];
}

std::optional<Coloring> bad_coloring_search(const FinStructure& c, const FinStructure& b,
                                            const FinStructure& a, int k,
                                            const ArrowOptions& opts) {
    Incidence inc = build_incidence(c, b, a);
    bool budget_hit = false;
    auto assignment = run_bad_search(inc, k, opts, budget_hit);
    if (!assignment) return std::nullopt;
    return Coloring{a, c, k, *assignment};
}

ArrowVerdict check_arrow(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                         int k, ArrowMode mode, const ArrowOptions& opts) {
    if (k < 1) throw StructureError("check_arrow: k must be positive");
    Incidence inc = build_incidence(c, b, a);
    switch (mode) {
        case ArrowMode::exhaustive:
            return exhaustive_check(c, b, a, k, inc, opts);
        case ArrowMode::search: {
            ArrowVerdict v;
            bool budget_hit = false;
            auto assignment = run_bad_search(inc, k, opts, budget_hit);
            if (assignment) {
                v.status = Status::fails;
                v.bad_coloring = Coloring{a, c, k, *assignment};
            } else if (budget_hit) {
                v.status = Status::inconclusive;
                v.detail = "search budget exhausted";
            } else {
                v.status = Status::holds;
            }
            return v;
        }
        case ArrowMode::cnf: {
            ArrowVerdict v;
            if (!opts.solver) {
                v.status = Status::inconclusive;
                v.detail = "cnf mode requires an external solver";
                return v;
            }
            auto model = opts.solver(export_cnf(c, b, a, k));
            if (model) {
                Coloring col = decode_cnf_model(c, a, k, *model);
                if (find_homogeneous(b, col)) {
                    v.status = Status::inconclusive;
                    v.detail = "solver model failed bad-coloring verification";
                    return v;
                }
                v.status = Status::fails;
                v.bad_coloring = std::move(col);
            } else {
                v.status = Status::holds;
            }
            return v;
        }
    }
    return {};
}

std::string export_cnf(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                       int k) {
    if (k < 1) throw StructureError("export_cnf: k must be positive");
    Incidence inc = build_incidence(c, b, a);
    const int n = static_cast<int>(inc.a_copies.size());
    auto var = [&](int copy1, int color) { return (copy1 - 1) * k + color; };

    std::ostringstream clauses;
    int clause_count = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= k; ++j) clauses << var(i, j) << " ";
        clauses << "0\n";
        ++clause_count;
        for (int j1 = 1; j1 <= k; ++j1)
            for (int j2 = j1 + 1; j2 <= k; ++j2) {
                clauses << -var(i, j1) << " " << -var(i, j2) << " 0\n";
                ++clause_count;
            }
    }
    for (const auto& sub : inc.contained) {
        for (int j = 1; j <= k; ++j) {
            for (int ai : sub) clauses << -var(ai + 1, j) << " ";
            clauses << "0\n";
            ++clause_count;
        }
    }

    std::ostringstream out;
    for (int i = 0; i < n; ++i) {
        out << "c copy " << (i + 1) << " = {";
        const Tuple& vs = inc.a_copies[static_cast<size_t>(i)].vertex_set;
        for (size_t j = 0; j < vs.size(); ++j) out << (j ? "," : "") << vs[j];
        out << "}\n";
    }
    out << "p cnf " << n * k << " " << clause_count << "\n" << clauses.str();
    return out.str();
}

Coloring decode_cnf_model(const FinStructure& c, const FinStructure& a, int k,
                          const std::vector<int>& model) {
    auto copies = enumerate_copies(a, c);
    std::vector<int> assignment(copies.size(), 0);
    for (int lit : model) {
        if (lit <= 0) continue;
        int idx = lit - 1;
        int copy = idx / k, color = idx % k + 1;
        if (copy < static_cast<int>(copies.size())) assignment[static_cast<size_t>(copy)] = color;
    }
    for (int col : assignment)
        if (col == 0) throw StructureError("decode_cnf_model: model leaves a copy uncolored");
    return Coloring{a, c, k, std::move(assignment)};
}

RamseyWitness ramsey_witness_search(const FiniteClass& k_class, const FinStructure& b,
                                    const FinStructure& a, int k, int cap,
                                    const ArrowOptions& opts) {
    bool any_inconclusive = false;
    for (int s = 1; s <= cap; ++s) {
        for (const auto& c : k_class.generator(s)) {
            ArrowVerdict v = check_arrow(c, b, a, k, ArrowMode::exhaustive, opts);
            if (v.status == Status::inconclusive)
                v = check_arrow(c, b, a, k, ArrowMode::search, opts);
            if (v.holds()) return {Status::holds, c, ""};
            if (v.status == Status::inconclusive) any_inconclusive = true;
        }
    }
    if (any_inconclusive)
        return {Status::inconclusive, std::nullopt, "budget exhausted on some candidate"};
    return {Status::inconclusive, std::nullopt, "size cap exhausted"};
}

}  // namespace structlab
