#include "structlab/classes.hpp"

#include <algorithm>
#include <map>

#include "structlab/qftype.hpp"

namespace structlab {

std::string to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void for_each_subset(int n, int max_size, const std::function<void(const Tuple&)>& f) {
    Tuple cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) <= max_size) f(cur);
        if (static_cast<int>(cur.size()) == max_size) return;
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

bool structures_isomorphic(const FinStructure& a, const FinStructure& b) {
    return isomorphic(a, b).has_value();
}

/// Members of sizes 0..n in generator order.
std::vector<FinStructure> members_up_to(const FiniteClass& k, int n) {
    std::vector<FinStructure> out;
    for (int s = 0; s <= n; ++s)
        for (auto& m : k.generator(s)) out.push_back(std::move(m));
    return out;
}

bool binary_ordered_signature(const Signature& sig) {
    if (!sig.has_order()) return false;
    for (int r = 0; r < sig.relation_count(); ++r)
        if (r != sig.order_index() && sig.relation(r).arity != 2) return false;
    return true;
}

/// Quotient-based amalgam search for ordered structures whose non-order
/// relations are binary. Candidates are quotients of the disjoint sum over A:
/// an identification matching, a linear-order interleaving, and free cross
/// pairs. Complete for hereditary classes.
std::optional<AmalgamWitness> quotient_amalgam_search(const FiniteClass& k,
                                                      const AmalgamationBase& base, bool strong) {
    const FinStructure& b1 = base.b1;
    const FinStructure& b2 = base.b2;
    const Signature& sig = *k.signature;
    const int ord = sig.order_index();

    const int n1 = b1.size(), n2 = b2.size(), na = base.a.size();
    std::vector<int> a_pos2(static_cast<size_t>(n2), -1);  // B2 vertex -> B1 vertex, via A
    for (int i = 0; i < na; ++i)
        a_pos2[static_cast<size_t>(base.f2.map[static_cast<size_t>(i)])] =
            base.f1.map[static_cast<size_t>(i)];
    std::vector<int> o1, o2;  // vertices outside the A-image
    {
        std::vector<bool> in_a1(static_cast<size_t>(n1), false);
        for (int v : base.f1.map) in_a1[static_cast<size_t>(v)] = true;
        for (int v = 0; v < n1; ++v)
            if (!in_a1[static_cast<size_t>(v)]) o1.push_back(v);
        for (int v = 0; v < n2; ++v)
            if (a_pos2[static_cast<size_t>(v)] < 0) o2.push_back(v);
    }

    // Enumerate injective partial matchings o2 -> o1, empty first.
    std::vector<std::vector<int>> matchings;  // match[i] = o1 partner of o2[i], or -1
    {
        std::vector<int> cur(o2.size(), -1);
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == o2.size()) {
                matchings.push_back(cur);
                return;
            }
            cur[i] = -1;
            rec(i + 1);
            if (strong) return;
            for (int x : o1) {
                if (std::find(cur.begin(), cur.begin() + static_cast<long>(i), x) !=
                    cur.begin() + static_cast<long>(i))
                    continue;
                cur[i] = x;
                rec(i + 1);
            }
            cur[i] = -1;
        };
        rec(0);
        std::stable_sort(matchings.begin(), matchings.end(),
                         [](const std::vector<int>& x, const std::vector<int>& y) {
                             auto count = [](const std::vector<int>& v) {
                                 return std::count_if(v.begin(), v.end(),
                                                      [](int a) { return a >= 0; });
                             };
                             return count(x) < count(y);
                         });
    }

    for (const auto& match : matchings) {
        // map2[w] = merged vertex for B2 vertex w; merged ids: 0..n1-1 = B1,
        // n1.. = unmatched B2-only vertices
        std::vector<int> map2(static_cast<size_t>(n2), -1);
        std::vector<int> fresh;  // B2 vertices given fresh ids
        for (int w = 0; w < n2; ++w) {
            if (a_pos2[static_cast<size_t>(w)] >= 0) map2[static_cast<size_t>(w)] = a_pos2[static_cast<size_t>(w)];
        }
        for (size_t i = 0; i < o2.size(); ++i)
            if (match[i] >= 0) map2[static_cast<size_t>(o2[i])] = match[i];
        for (size_t i = 0; i < o2.size(); ++i)
            if (match[i] < 0) {
                map2[static_cast<size_t>(o2[i])] = n1 + static_cast<int>(fresh.size());
                fresh.push_back(o2[i]);
            }
        const int total = n1 + static_cast<int>(fresh.size());

        // consistency of identified pairs: relations among B2 vertices that
        // land inside B1 must agree with B1
        bool consistent = true;
        for (int r = 0; r < sig.relation_count() && consistent; ++r) {
            if (r == ord) continue;
            for (int u = 0; u < n2 && consistent; ++u)
                for (int w = 0; w < n2 && consistent; ++w) {
                    int mu = map2[static_cast<size_t>(u)], mw = map2[static_cast<size_t>(w)];
                    if (mu < n1 && mw < n1)
                        if (b2.holds(r, {u, w}) != b1.holds(r, {mu, mw})) consistent = false;
                }
        }
        if (!consistent) continue;

        // partial order on merged vertices from both parts
        std::vector<std::vector<bool>> before(static_cast<size_t>(total),
                                              std::vector<bool>(static_cast<size_t>(total), false));
        auto add_edge = [&](int u, int v) { before[static_cast<size_t>(u)][static_cast<size_t>(v)] = true; };
        for (int u = 0; u < n1; ++u)
            for (int v = u + 1; v < n1; ++v) add_edge(u, v);
        for (int u = 0; u < n2; ++u)
            for (int v = u + 1; v < n2; ++v)
                add_edge(map2[static_cast<size_t>(u)], map2[static_cast<size_t>(v)]);
        // transitive closure + antisymmetry check
        for (int m = 0; m < total; ++m)
            for (int u = 0; u < total; ++u)
                if (before[static_cast<size_t>(u)][static_cast<size_t>(m)])
                    for (int v = 0; v < total; ++v)
                        if (before[static_cast<size_t>(m)][static_cast<size_t>(v)]) add_edge(u, v);
        bool acyclic = true;
        for (int u = 0; u < total && acyclic; ++u)
            if (before[static_cast<size_t>(u)][static_cast<size_t>(u)]) acyclic = false;
        if (!acyclic) continue;

        // enumerate linear extensions
        std::vector<std::vector<int>> extensions;
        {
            std::vector<int> seq;
            std::vector<bool> placed(static_cast<size_t>(total), false);
            std::function<void()> rec = [&]() {
                if (static_cast<int>(seq.size()) == total) {
                    extensions.push_back(seq);
                    return;
                }
                for (int v = 0; v < total; ++v) {
                    if (placed[static_cast<size_t>(v)]) continue;
                    bool ready = true;
                    for (int u = 0; u < total && ready; ++u)
                        if (!placed[static_cast<size_t>(u)] &&
                            before[static_cast<size_t>(u)][static_cast<size_t>(v)])
                            ready = false;
                    if (!ready) continue;
                    placed[static_cast<size_t>(v)] = true;
                    seq.push_back(v);
                    rec();
                    seq.pop_back();
                    placed[static_cast<size_t>(v)] = false;
                }
            };
            rec();
        }

        // free cross pairs: unmatched-B1-only x fresh-B2-only
        std::vector<bool> shared1(static_cast<size_t>(n1), false);
        for (int v : base.f1.map) shared1[static_cast<size_t>(v)] = true;
        for (size_t i = 0; i < o2.size(); ++i)
            if (match[i] >= 0) shared1[static_cast<size_t>(match[i])] = true;
        std::vector<std::pair<int, int>> free_pairs;
        for (int u = 0; u < n1; ++u)
            if (!shared1[static_cast<size_t>(u)])
                for (size_t j = 0; j < fresh.size(); ++j)
                    free_pairs.emplace_back(u, n1 + static_cast<int>(j));

        std::vector<int> non_order_rels;
        for (int r = 0; r < sig.relation_count(); ++r)
            if (r != ord) non_order_rels.push_back(r);

        for (const auto& seq : extensions) {
            std::vector<int> pos(static_cast<size_t>(total));
            for (int p = 0; p < total; ++p) pos[static_cast<size_t>(seq[static_cast<size_t>(p)])] = p;

            const uint64_t cross_limit =
                uint64_t{1} << (free_pairs.size() * non_order_rels.size());
            for (uint64_t mask = 0; mask < cross_limit; ++mask) {
                std::vector<Table> tables(static_cast<size_t>(sig.relation_count()));
                for (int i = 0; i < total; ++i)
                    for (int j = i + 1; j < total; ++j)
                        tables[static_cast<size_t>(ord)].insert({i, j});
                for (int r : non_order_rels) {
                    for (const Tuple& t : b1.table(r))
                        tables[static_cast<size_t>(r)].insert(
                            {pos[static_cast<size_t>(t[0])], pos[static_cast<size_t>(t[1])]});
                    for (const Tuple& t : b2.table(r))
                        tables[static_cast<size_t>(r)].insert(
                            {pos[static_cast<size_t>(map2[static_cast<size_t>(t[0])])],
                             pos[static_cast<size_t>(map2[static_cast<size_t>(t[1])])]});
                }
                size_t bit = 0;
                for (int r : non_order_rels)
                    for (auto [u, w] : free_pairs) {
                        if ((mask >> bit) & 1) {
                            int pu = pos[static_cast<size_t>(u)], pw = pos[static_cast<size_t>(w)];
                            tables[static_cast<size_t>(r)].insert({pu, pw});
                            tables[static_cast<size_t>(r)].insert({pw, pu});
                        }
                        ++bit;
                    }
                FinStructure c;
                try {
                    c = FinStructure(k.signature, total, std::move(tables));
                } catch (const StructureError&) {
                    continue;
                }
                if (!k.membership(c)) continue;
                Tuple g1map(static_cast<size_t>(n1)), g2map(static_cast<size_t>(n2));
                for (int v = 0; v < n1; ++v) g1map[static_cast<size_t>(v)] = pos[static_cast<size_t>(v)];
                for (int w = 0; w < n2; ++w)
                    g2map[static_cast<size_t>(w)] = pos[static_cast<size_t>(map2[static_cast<size_t>(w)])];
                Embedding g1{b1, c, g1map}, g2{b2, c, g2map};
                if (!g1.valid() || !g2.valid()) continue;
                return AmalgamWitness{c, g1, g2};
            }
        }
    }
    return std::nullopt;
}

std::optional<AmalgamWitness> scan_amalgam_search(const FiniteClass& k,
                                                  const AmalgamationBase& base, bool strong) {
    for (int s = std::max(base.b1.size(), base.b2.size()); s <= k.size_cap; ++s) {
        for (const auto& c : k.generator(s)) {
            for (const auto& g1 : enumerate_embeddings(base.b1, c)) {
                for (const auto& g2 : enumerate_embeddings(base.b2, c)) {
                    bool commutes = true;
                    for (int i = 0; i < base.a.size() && commutes; ++i)
                        if (g1.map[static_cast<size_t>(base.f1.map[static_cast<size_t>(i)])] !=
                            g2.map[static_cast<size_t>(base.f2.map[static_cast<size_t>(i)])])
                            commutes = false;
                    if (!commutes) continue;
                    if (strong) {
                        std::set<int> im1(g1.map.begin(), g1.map.end());
                        std::set<int> shared;
                        for (int v : g2.map)
                            if (im1.count(v)) shared.insert(v);
                        if (static_cast<int>(shared.size()) != base.a.size()) continue;
                    }
                    return AmalgamWitness{c, g1, g2};
                }
            }
        }
    }
    return std::nullopt;
}

Verdict<AmalgamationBase> amalgamation_check(const FiniteClass& k, int n, bool strong) {
    auto members = members_up_to(k, n);
    bool any_inconclusive = false;
    for (int a_size = 0; a_size <= n; ++a_size) {
        for (const auto& a : k.generator(a_size)) {
            // all (B, f) with f : A -> B, parts of size <= n
            std::vector<std::pair<const FinStructure*, Embedding>> sides;
            for (const auto& b : members)
                for (auto& f : enumerate_embeddings(a, b)) sides.emplace_back(&b, std::move(f));
            for (const auto& [b1, f1] : sides) {
                for (const auto& [b2, f2] : sides) {
                    AmalgamationBase base{a, *b1, *b2, f1, f2};
                    auto witness = find_amalgam(k, base, strong);
                    if (!witness) {
                        if (k.hereditary_hint && binary_ordered_signature(*k.signature))
                            return {Status::fails, base, "no amalgam exists for this base"};
                        any_inconclusive = true;
                    }
                }
            }
        }
    }
    if (any_inconclusive)
        return {Status::inconclusive, std::nullopt, "amalgam search cap exhausted for some base"};
    return {Status::holds, std::nullopt, ""};
}

}  // namespace

std::optional<AmalgamWitness> find_amalgam(const FiniteClass& k, const AmalgamationBase& base,
                                           bool strong) {
    if (k.hereditary_hint && binary_ordered_signature(*k.signature))
        return quotient_amalgam_search(k, base, strong);
    return scan_amalgam_search(k, base, strong);
}

std::vector<FinStructure> age_up_to(const FinStructure& m, int n) {
    if (m.size() > limits().size_cap) throw StructureError("age_up_to: size cap exceeded");
    std::vector<FinStructure> out;
    for_each_subset(m.size(), std::min(n, m.size()), [&](const Tuple& subset) {
        if (subset.empty()) return;  // the empty structure is not listed
        FinStructure sub = induced_substructure(m, subset);
        for (const auto& seen : out)
            if (structures_isomorphic(sub, seen)) return;
        out.push_back(std::move(sub));
    });
    std::stable_sort(out.begin(), out.end(),
                     [](const FinStructure& x, const FinStructure& y) { return x.size() < y.size(); });
    return out;
}

Verdict<HereditaryCounterexample> hereditary_check(const FiniteClass& k, int n) {
    for (int s = 0; s <= n; ++s) {
        for (const auto& member : k.generator(s)) {
            Verdict<HereditaryCounterexample> bad{Status::holds, std::nullopt, ""};
            bool found = false;
            for_each_subset(member.size(), member.size(), [&](const Tuple& subset) {
                if (found) return;
                FinStructure sub = induced_substructure(member, subset);
                if (!k.membership(sub)) {
                    bad = {Status::fails, HereditaryCounterexample{member, subset},
                           "induced substructure leaves the class"};
                    found = true;
                }
            });
            if (found) return bad;
        }
    }
    return {Status::holds, std::nullopt, ""};
}

Verdict<JepCounterexample> jep_check(const FiniteClass& k, int n) {
    auto members = members_up_to(k, n);
    bool any_inconclusive = false;
    for (const auto& a : members) {
        for (const auto& b : members) {
            bool witnessed = false;
            if (k.signature->has_order()) {
                std::vector<FinStructure> parts;
                if (a.size() > 0) parts.push_back(a);
                if (b.size() > 0) parts.push_back(b);
                if (parts.empty()) {
                    witnessed = true;
                } else {
                    FinStructure sum = ordered_sum(parts);
                    if (k.membership(sum) && !enumerate_embeddings(a, sum).empty() &&
                        !enumerate_embeddings(b, sum).empty())
                        witnessed = true;
                }
            }
            for (int s = std::max(a.size(), b.size()); !witnessed && s <= k.size_cap; ++s)
                for (const auto& c : k.generator(s)) {
                    if (!enumerate_embeddings(a, c).empty() && !enumerate_embeddings(b, c).empty()) {
                        witnessed = true;
                        break;
                    }
                }
            if (!witnessed) any_inconclusive = true;
        }
    }
    if (any_inconclusive)
        return {Status::inconclusive, std::nullopt, "joint-embedding search cap exhausted"};
    return {Status::holds, std::nullopt, ""};
}

Verdict<AmalgamationBase> ap_check(const FiniteClass& k, int n) {
    return amalgamation_check(k, n, false);
}

Verdict<AmalgamationBase> strong_ap_check(const FiniteClass& k, int n) {
    return amalgamation_check(k, n, true);
}

Verdict<HypergraphViolation> hypergraph_check(const FinStructure& a) {
    const Signature& sig = a.signature();
    for (int r = 0; r < sig.relation_count(); ++r) {
        if (r == sig.order_index()) continue;
        const auto& name = sig.relation(r).name;
        for (const Tuple& t : a.table(r)) {
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] == t[j])
                        return {Status::fails, HypergraphViolation{name, t, "antireflexivity"},
                                "repeated entry"};
            Tuple perm = t;
            std::sort(perm.begin(), perm.end());
            do {
                if (!a.holds(r, perm))
                    return {Status::fails, HypergraphViolation{name, perm, "symmetry"},
                            "missing permuted tuple"};
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    return {Status::holds, std::nullopt, ""};
}

std::vector<FinStructure> all_ordered_graphs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<FinStructure> out;
    const uint64_t count = uint64_t{1} << pairs.size();
    for (uint64_t mask = 0; mask < count; ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (size_t b = 0; b < pairs.size(); ++b)
            if ((mask >> b) & 1) edges.push_back(pairs[b]);
        out.push_back(ordered_graph(n, edges));
    }
    return out;
}

bool girth_greater_than_4(const FinStructure& g) {
    const int rel = g.signature().relation_index("R");
    if (rel < 0) return true;
    auto adj = [&](int u, int v) { return g.holds(rel, {u, v}); };
    const int n = g.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (adj(a, b) && adj(b, c) && adj(a, c)) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    if (adj(a, b) && adj(b, c) && adj(c, d) && adj(d, a)) return false;
                }
    return true;
}

FiniteClass class_ordered_graphs(int size_cap) {
    auto sig = std::make_shared<Signature>(Signature::ordered_graph());
    return FiniteClass{
        "ordered-graphs", sig,
        [sig](const FinStructure& s) { return s.signature() == *sig; },
        [](int n) { return all_ordered_graphs(n); }, size_cap, true};
}

FiniteClass class_girth_gt4_ordered_graphs(int size_cap) {
    auto sig = std::make_shared<Signature>(Signature::ordered_graph());
    return FiniteClass{
        "girth5-ordered", sig,
        [sig](const FinStructure& s) { return s.signature() == *sig && girth_greater_than_4(s); },
        [](int n) {
            std::vector<FinStructure> out;
            for (auto& g : all_ordered_graphs(n))
                if (girth_greater_than_4(g)) out.push_back(std::move(g));
            return out;
        },
        size_cap, true};
}

FiniteClass class_linear_orders(int size_cap) {
    auto sig = std::make_shared<Signature>(Signature::linear_order());
    return FiniteClass{
        "linear-orders", sig,
        [sig](const FinStructure& s) { return s.signature() == *sig; },
        [](int n) { return std::vector<FinStructure>{linear_order(n)}; }, size_cap, true};
}

FiniteClass class_ordered_hypergraphs(std::shared_ptr<const Signature> sig, int size_cap) {
    if (!sig->has_order()) throw StructureError("ordered hypergraph class requires an order symbol");
    return FiniteClass{
        "ordered-hypergraphs", sig,
        [sig](const FinStructure& s) {
            return s.signature() == *sig && hypergraph_check(s).holds();
        },
        [sig](int n) {
            // orbits of potential tuples under symmetry: increasing subsets
            std::vector<std::pair<int, std::vector<Tuple>>> orbits;  // (rel, members)
            for (int r = 0; r < sig->relation_count(); ++r) {
                if (r == sig->order_index()) continue;
                const int arity = sig->relation(r).arity;
                Tuple cur;
                std::function<void(int)> rec = [&](int start) {
                    if (static_cast<int>(cur.size()) == arity) {
                        std::vector<Tuple> perms;
                        Tuple p = cur;
                        do perms.push_back(p);
                        while (std::next_permutation(p.begin(), p.end()));
                        orbits.emplace_back(r, std::move(perms));
                        return;
                    }
                    for (int v = start; v < n; ++v) {
                        cur.push_back(v);
                        rec(v + 1);
                        cur.pop_back();
                    }
                };
                rec(0);
            }
            if (orbits.size() > 24)
                throw StructureError("ordered hypergraph generator: too many tuple orbits");
            std::vector<FinStructure> out;
            const uint64_t count = uint64_t{1} << orbits.size();
            for (uint64_t mask = 0; mask < count; ++mask) {
                std::vector<Table> tables(static_cast<size_t>(sig->relation_count()));
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        tables[static_cast<size_t>(sig->order_index())].insert({i, j});
                for (size_t b = 0; b < orbits.size(); ++b)
                    if ((mask >> b) & 1)
                        for (const Tuple& t : orbits[b].second)
                            tables[static_cast<size_t>(orbits[b].first)].insert(t);
                out.emplace_back(sig, n, std::move(tables));
            }
            return out;
        },
        size_cap, true};
}

}  // namespace structlab
