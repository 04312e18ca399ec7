#include "structlab/niplab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace structlab {

namespace {

void for_each_tuple(int n, int len, const std::function<void(const Tuple&)>& f) {
    if (len == 0) {
        f({});
        return;
    }
    if (n == 0) return;
    Tuple cur(static_cast<size_t>(len), 0);
    while (true) {
        f(cur);
        int pos = len - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == n - 1) {
            cur[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<size_t>(pos)];
    }
}

std::vector<Tuple> all_tuples(int n, int len) {
    std::vector<Tuple> out;
    for_each_tuple(n, len, [&](const Tuple& t) { out.push_back(t); });
    return out;
}

bool eval_pair(const PartitionedFormula& phi, const FinStructure& m, const Tuple& object,
               const Tuple& parameter) {
    Tuple assignment;
    assignment.reserve(object.size() + parameter.size());
    assignment.insert(assignment.end(), object.begin(), object.end());
    assignment.insert(assignment.end(), parameter.begin(), parameter.end());
    return evaluate(*phi.formula, m, assignment);
}

int graph_edge_relation(const Signature& sig) {
    for (int r = 0; r < sig.relation_count(); ++r)
        if (r != sig.order_index() && sig.relation(r).arity == 2) return r;
    throw StructureError("expected a binary edge relation");
}

/// Clone with free variables remapped; bound variables get fresh indices.
FormulaPtr rename_formula(const FormulaPtr& f, const std::function<int(int)>& map_free,
                          std::map<int, int>& bound, int& next_bound) {
    switch (f->kind) {
        case FormulaKind::rel:
        case FormulaKind::eq: {
            Tuple vars = f->vars;
            for (int& v : vars) {
                auto it = bound.find(v);
                v = it != bound.end() ? it->second : map_free(v);
            }
            return f->kind == FormulaKind::rel ? Formula::rel(f->rel_name, std::move(vars))
                                               : Formula::eq(vars[0], vars[1]);
        }
        case FormulaKind::not_:
            return Formula::neg(rename_formula(f->children[0], map_free, bound, next_bound));
        case FormulaKind::implies:
            return Formula::implies(rename_formula(f->children[0], map_free, bound, next_bound),
                                    rename_formula(f->children[1], map_free, bound, next_bound));
        case FormulaKind::and_:
        case FormulaKind::or_: {
            std::vector<FormulaPtr> parts;
            for (const auto& c : f->children)
                parts.push_back(rename_formula(c, map_free, bound, next_bound));
            return f->kind == FormulaKind::and_ ? Formula::conj(std::move(parts))
                                                : Formula::disj(std::move(parts));
        }
        case FormulaKind::exists:
        case FormulaKind::forall: {
            int nb = next_bound++;
            auto saved = bound.find(f->bound_var);
            std::optional<int> old;
            if (saved != bound.end()) old = saved->second;
            bound[f->bound_var] = nb;
            auto body = rename_formula(f->children[0], map_free, bound, next_bound);
            if (old)
                bound[f->bound_var] = *old;
            else
                bound.erase(f->bound_var);
            return f->kind == FormulaKind::exists ? Formula::exists(nb, std::move(body))
                                                  : Formula::forall(nb, std::move(body));
        }
    }
    return f;
}

}  // namespace

bool ShatterWitness::verify() const {
    if (static_cast<int>(parameters.size()) != n) return false;
    if (instances.size() != (size_t{1} << n) || subsets.size() != instances.size()) return false;
    for (size_t t = 0; t < instances.size(); ++t) {
        for (int i = 0; i < n; ++i) {
            bool want = std::find(subsets[t].begin(), subsets[t].end(), i) != subsets[t].end();
            if (eval_pair(phi, target, instances[t], parameters[static_cast<size_t>(i)]) != want)
                return false;
        }
    }
    return true;
}

std::optional<ShatterWitness> shatter_check(const PartitionedFormula& phi, const FinStructure& m,
                                            int n, std::uint64_t budget) {
    if (n < 0) throw StructureError("shatter_check: n must be nonnegative");
    auto param_tuples = all_tuples(m.size(), phi.parameter_arity);
    auto object_tuples = all_tuples(m.size(), phi.object_arity);
    if (object_tuples.empty()) return std::nullopt;

    const size_t pn = param_tuples.size();
    if (static_cast<size_t>(n) > pn) return std::nullopt;
    // C(pn, n) * 2^n * |object tuples|, with overflow care
    double combos = 1.0;
    for (int i = 0; i < n; ++i) combos = combos * static_cast<double>(pn - static_cast<size_t>(i)) / (i + 1);
    double work = combos * static_cast<double>(uint64_t{1} << n) *
                  static_cast<double>(object_tuples.size());
    if (work > static_cast<double>(budget))
        throw StructureError("shatter_check: search budget exceeded");

    std::vector<size_t> pick(static_cast<size_t>(n));
    std::function<std::optional<ShatterWitness>(int, size_t)> rec =
        [&](int depth, size_t start) -> std::optional<ShatterWitness> {
        if (depth == n) {
            ShatterWitness w{phi, m, n, {}, {}, {}};
            for (size_t idx : pick) w.parameters.push_back(param_tuples[idx]);
            for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
                const Tuple* found = nullptr;
                for (const auto& b : object_tuples) {
                    bool ok = true;
                    for (int i = 0; i < n && ok; ++i) {
                        bool want = (mask >> i) & 1;
                        if (eval_pair(phi, m, b, w.parameters[static_cast<size_t>(i)]) != want)
                            ok = false;
                    }
                    if (ok) {
                        found = &b;
                        break;
                    }
                }
                if (!found) return std::nullopt;
                w.instances.push_back(*found);
                std::vector<int> subset;
                for (int i = 0; i < n; ++i)
                    if ((mask >> i) & 1) subset.push_back(i);
                w.subsets.push_back(std::move(subset));
            }
            return w;
        }
        for (size_t idx = start; idx + static_cast<size_t>(n - depth) <= pn + 1 && idx < pn; ++idx) {
            pick[static_cast<size_t>(depth)] = idx;
            auto got = rec(depth + 1, idx + 1);
            if (got) return got;
        }
        return std::nullopt;
    };
    return rec(0, 0);
}

std::optional<IndexedFamily> code_graph(const PartitionedFormula& phi, const FinStructure& m,
                                        const FinStructure& g) {
    const int l = phi.object_arity;
    if (phi.parameter_arity != l)
        throw StructureError("code_graph: formula must pair equal-length blocks");
    auto tuples = all_tuples(m.size(), l);
    for (size_t i = 0; i < tuples.size(); ++i)
        for (size_t j = i + 1; j < tuples.size(); ++j)
            if (eval_pair(phi, m, tuples[i], tuples[j]) != eval_pair(phi, m, tuples[j], tuples[i]))
                throw StructureError("code_graph: formula is not symmetric on the target");

    const int rel = graph_edge_relation(g.signature());
    std::vector<Tuple> map(static_cast<size_t>(g.size()));
    std::function<bool(int)> assign = [&](int v) -> bool {
        if (v == g.size()) return true;
        for (const auto& cand : tuples) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) {
                if (map[static_cast<size_t>(u)] == cand) ok = false;
                else if (eval_pair(phi, m, cand, map[static_cast<size_t>(u)]) != g.holds(rel, {v, u}))
                    ok = false;
            }
            if (!ok) continue;
            map[static_cast<size_t>(v)] = cand;
            if (assign(v + 1)) return true;
        }
        map[static_cast<size_t>(v)].clear();
        return false;
    };
    if (!assign(0)) return std::nullopt;
    IndexedFamily fam{g, m, std::move(map)};
    fam.validate();
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (eval_pair(phi, m, fam.map[static_cast<size_t>(u)], fam.map[static_cast<size_t>(v)]) !=
                g.holds(rel, {u, v}))
                throw StructureError("code_graph: verification failed");
    return fam;
}

namespace {

std::vector<bool> r_bits(const QfType& t, int rel, int m) {
    std::vector<bool> bits;
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) bits.push_back(t.rel_atom(rel, {p, q}));
    return bits;
}

QfType type_from_bits(const std::vector<bool>& bits, int m) {
    std::vector<std::pair<int, int>> edges;
    size_t idx = 0;
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            if (bits[idx]) edges.emplace_back(p, q);
            ++idx;
        }
    return diagram_type(ordered_graph(m, edges));
}

void for_each_increasing(int n, int len, const std::function<void(const Tuple&)>& f) {
    Tuple cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == len) {
            f(cur);
            return;
        }
        for (int v = start; v <= n - (len - static_cast<int>(cur.size())); ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

std::optional<CollapseReport> collapse_analysis(const IndexedFamily& fam,
                                                const FormulaSet& delta) {
    fam.validate();
    if (fam.index.signature() != Signature::ordered_graph())
        throw StructureError("collapse_analysis: the index must be an ordered graph");
    const int l = fam.tuple_length();
    int n_max = 0;
    for (const auto& df : delta.formulas) n_max = std::max(n_max, block_arity(df, l));
    if (n_max < 1) return std::nullopt;

    IndiscernibleType itype = indiscernible_type(fam, delta, n_max);

    // find the least arity with two realized increasing types of different
    // Delta-value (for an ordered-graph index the order type is uniform, so
    // this is exactly an order-indiscernibility failure)
    int m = 0;
    const QfType* qa = nullptr;
    const QfType* qb = nullptr;
    size_t diff_pos = 0;
    for (int arity = 1; arity <= n_max && !qa; ++arity) {
        std::vector<const QfType*> keys;
        for (const auto& [k, v] : itype.values)
            if (k.arity() == arity) keys.push_back(&k);
        for (size_t i = 0; i < keys.size() && !qa; ++i)
            for (size_t j = i + 1; j < keys.size() && !qa; ++j) {
                const auto& vi = itype.values.at(*keys[i]);
                const auto& vj = itype.values.at(*keys[j]);
                if (vi == vj) continue;
                size_t pos = 0;
                while (vi[pos] == vj[pos]) ++pos;
                qa = keys[i];
                qb = keys[j];
                diff_pos = pos;
                m = arity;
            }
    }
    if (!qa) return std::nullopt;

    CollapseReport report;
    auto [fi, sigma] = decode_delta_position(delta, l, m, diff_pos);
    report.theta = delta.formulas[static_cast<size_t>(fi)];
    report.formula = fi;
    report.slot_map = sigma;
    report.n = m;
    report.type_a = *qa;
    report.type_b = *qb;

    const int rel = fam.index.signature().relation_index("R");
    auto bits_a = r_bits(*qa, rel, m);
    auto bits_b = r_bits(*qb, rel, m);
    std::vector<std::pair<int, int>> flip_pairs;
    {
        size_t idx = 0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                if (bits_a[idx] != bits_b[idx]) flip_pairs.emplace_back(p, q);
                ++idx;
            }
    }

    // walk a -> b flipping one R-bit per step; locate the theta crossing
    const size_t theta_pos = delta_position(delta, l, m, fi, sigma);
    auto theta_value = [&](const QfType& t) -> char {
        auto it = itype.values.find(t);
        if (it == itype.values.end())
            throw StructureError("collapse_analysis: walk type unrealized in the index: " +
                                 t.to_string());
        return it->second[theta_pos];
    };
    std::vector<bool> cur = bits_a;
    QfType prev = *qa;
    char prev_value = theta_value(prev);
    std::optional<std::pair<QfType, QfType>> crossing;
    std::pair<int, int> flip{-1, -1};
    for (const auto& [p, q] : flip_pairs) {
        size_t idx = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (a == p && b == q) cur[idx] = !cur[idx];
                ++idx;
            }
        QfType next = type_from_bits(cur, m);
        char next_value = theta_value(next);
        if (!crossing && next_value != prev_value) {
            crossing = {prev, next};
            flip = {p, q};
        }
        prev = next;
        prev_value = next_value;
    }
    if (!crossing)
        throw StructureError("collapse_analysis: no crossing found along the walk");
    report.normalized_a = crossing->first;
    report.normalized_b = crossing->second;
    report.flip = flip;
    const int k = flip.first, fl = flip.second;

    // re-base: realizations of a' and b' sharing all elements off (k, l)
    std::optional<Tuple> real_a, real_b;
    for_each_increasing(fam.index.size(), m, [&](const Tuple& t) {
        if (real_a) return;
        if (qftype_of(t, fam.index) != report.normalized_a) return;
        // replace positions k and l, keep the rest
        Tuple other = t;
        const int lo_min = (k > 0) ? t[static_cast<size_t>(k - 1)] + 1 : 0;
        const int lo_max = (k + 1 < m && k + 1 != fl) ? t[static_cast<size_t>(k + 1)] - 1
                                                       : fam.index.size() - 1;
        for (int x = lo_min; x <= lo_max && !real_a; ++x) {
            other[static_cast<size_t>(k)] = x;
            const int hi_min = (fl - 1 == k) ? x + 1 : t[static_cast<size_t>(fl - 1)] + 1;
            const int hi_max = (fl + 1 < m) ? t[static_cast<size_t>(fl + 1)] - 1
                                            : fam.index.size() - 1;
            for (int y = std::max(hi_min, x + 1); y <= hi_max && !real_a; ++y) {
                other[static_cast<size_t>(fl)] = y;
                bool distinct = true;
                for (int p = 0; p < m && distinct; ++p)
                    if (p != k && p != fl && (other[static_cast<size_t>(p)] == x ||
                                              other[static_cast<size_t>(p)] == y))
                        distinct = false;
                if (!distinct) continue;
                if (qftype_of(other, fam.index) == report.normalized_b) {
                    real_a = t;
                    real_b = other;
                }
            }
        }
    });
    if (!real_a)
        throw StructureError(
            "collapse_analysis: re-basing failed, no realization pair shares its common tuple");

    for (int p = 0; p < m; ++p)
        if (p != k && p != fl) report.common.push_back((*real_a)[static_cast<size_t>(p)]);

    // F carries the positive R(z1,z2); orient the two realizations
    const bool b_positive = report.normalized_b.rel_atom(rel, {k, fl});
    const Tuple& pos_real = b_positive ? *real_b : *real_a;
    const Tuple& neg_real = b_positive ? *real_a : *real_b;
    report.pair_i = {neg_real[static_cast<size_t>(k)], neg_real[static_cast<size_t>(fl)]};
    report.pair_j = {pos_real[static_cast<size_t>(k)], pos_real[static_cast<size_t>(fl)]};

    auto reorder = [&](const Tuple& t) {
        Tuple out{t[static_cast<size_t>(k)], t[static_cast<size_t>(fl)]};
        for (int p = 0; p < m; ++p)
            if (p != k && p != fl) out.push_back(t[static_cast<size_t>(p)]);
        return out;
    };
    report.f_type = qftype_of(reorder(pos_real), fam.index);
    report.g_type = qftype_of(reorder(neg_real), fam.index);
    report.theta_on_f =
        theta_value(b_positive ? report.normalized_b : report.normalized_a) != 0;

    // invariant: F and G differ exactly at the R-atoms on (z1, z2)
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            bool expect_same = !((p == 0 && q == 1) || (p == 1 && q == 0));
            if ((report.f_type.rel_atom(rel, {p, q}) == report.g_type.rel_atom(rel, {p, q})) !=
                expect_same)
                throw StructureError("collapse_analysis: F/G differ off R(z1,z2)");
        }
    return report;
}

PatternGraph build_pattern_graph(const CollapseReport& report, int m) {
    if (m < 1) throw StructureError("build_pattern_graph: m must be >= 1");
    const int n = report.n;
    const int k = report.flip.first, fl = report.flip.second;
    const int rel = report.f_type.signature().relation_index("R");

    PatternGraph pat;
    pat.y_vertices.resize(size_t{1} << m);
    pat.z_vertices.resize(static_cast<size_t>(m));
    int next = 0;
    std::vector<int> common_rank(static_cast<size_t>(n), -1);
    {
        int rank = 0;
        for (int p = 0; p < n; ++p)
            if (p != k && p != fl) common_rank[static_cast<size_t>(p)] = rank++;
        pat.u_vertices.resize(static_cast<size_t>(rank));
    }
    // vertex order follows the index positions: commons keep their slots, the
    // y-block sits at position k, the z-block at position fl
    for (int p = 0; p < n; ++p) {
        if (p == k) {
            for (size_t s = 0; s < pat.y_vertices.size(); ++s) pat.y_vertices[s] = next++;
        } else if (p == fl) {
            for (int t = 0; t < m; ++t) pat.z_vertices[static_cast<size_t>(t)] = next++;
        } else {
            pat.u_vertices[static_cast<size_t>(common_rank[static_cast<size_t>(p)])] = next++;
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (size_t s = 0; s < pat.y_vertices.size(); ++s)
        for (int t = 0; t < m; ++t)
            if ((s >> t) & 1) edges.emplace_back(pat.y_vertices[s], pat.z_vertices[static_cast<size_t>(t)]);
    for (int p = 0; p < n; ++p) {
        if (p == k || p == fl) continue;
        const int ri = common_rank[static_cast<size_t>(p)];
        if (report.f_type.rel_atom(rel, {0, 2 + ri}))
            for (int y : pat.y_vertices) edges.emplace_back(y, pat.u_vertices[static_cast<size_t>(ri)]);
        if (report.f_type.rel_atom(rel, {1, 2 + ri}))
            for (int z : pat.z_vertices) edges.emplace_back(z, pat.u_vertices[static_cast<size_t>(ri)]);
        for (int q = p + 1; q < n; ++q) {
            if (q == k || q == fl) continue;
            const int rj = common_rank[static_cast<size_t>(q)];
            if (report.f_type.rel_atom(rel, {2 + ri, 2 + rj}))
                edges.emplace_back(pat.u_vertices[static_cast<size_t>(ri)],
                                   pat.u_vertices[static_cast<size_t>(rj)]);
        }
    }
    pat.graph = ordered_graph(next, edges);
    return pat;
}

ShatterWitness ip_from_collapse(const CollapseReport& report, int m,
                                const SaturationCertificate& host, const IndexedFamily& fam) {
    fam.validate();
    PatternGraph pat = build_pattern_graph(report, m);
    auto embeddings = enumerate_embeddings(pat.graph, fam.index);
    if (embeddings.empty()) {
        std::string extra;
        if (pat.graph.size() <= host.structure.size() &&
            !enumerate_embeddings(pat.graph, host.structure).empty())
            extra = " (it embeds into the saturated host, but the family does not cover it)";
        throw StructureError("ip_from_collapse: pattern graph does not embed into the family index" +
                             extra);
    }
    const Tuple& e = embeddings.front().map;
    const int l = fam.tuple_length();
    const int n = report.n;
    const int k = report.flip.first, fl = report.flip.second;
    const int commons = n - 2;

    // theta': object block = y image, parameters = z image then commons
    const int kb = block_arity(report.theta, l);
    auto map_free = [&](int v) -> int {
        const int block = v / l, within = v % l;
        if (block >= kb) return v;  // beyond the slot map; harmless
        const int position = report.slot_map[static_cast<size_t>(block)];
        int base;
        if (position == k)
            base = 0;
        else if (position == fl)
            base = l;
        else {
            int rank = 0;
            for (int p = 0; p < position; ++p)
                if (p != k && p != fl) ++rank;
            base = l * (2 + rank);
        }
        return base + within;
    };
    std::map<int, int> bound;
    int next_bound = l * (kb + 2);
    FormulaPtr renamed = rename_formula(report.theta.formula, map_free, bound, next_bound);
    if (!report.theta_on_f) renamed = Formula::neg(std::move(renamed));

    ShatterWitness w;
    w.phi = PartitionedFormula{std::move(renamed), l, l * (1 + commons)};
    w.target = fam.target;
    w.n = m;
    for (int t = 0; t < m; ++t) {
        Tuple param = fam.map[static_cast<size_t>(e[static_cast<size_t>(pat.z_vertices[static_cast<size_t>(t)])])];
        for (int u : pat.u_vertices) {
            const Tuple& img = fam.map[static_cast<size_t>(e[static_cast<size_t>(u)])];
            param.insert(param.end(), img.begin(), img.end());
        }
        w.parameters.push_back(std::move(param));
    }
    const int rel = fam.index.signature().relation_index("R");
    for (size_t s = 0; s < pat.y_vertices.size(); ++s) {
        w.instances.push_back(
            fam.map[static_cast<size_t>(e[static_cast<size_t>(pat.y_vertices[s])])]);
        std::vector<int> subset;
        for (int t = 0; t < m; ++t)
            if ((s >> t) & 1) subset.push_back(t);
        w.subsets.push_back(std::move(subset));

        // each (y_s, z_t, commons) tuple must realize F or G per membership
        for (int t = 0; t < m; ++t) {
            Tuple idx_tuple{e[static_cast<size_t>(pat.y_vertices[s])],
                            e[static_cast<size_t>(pat.z_vertices[static_cast<size_t>(t)])]};
            for (int u : pat.u_vertices) idx_tuple.push_back(e[static_cast<size_t>(u)]);
            const QfType& expect = ((s >> t) & 1) ? report.f_type : report.g_type;
            QfType got = qftype_of(idx_tuple, fam.index);
            for (int p = 0; p < static_cast<int>(idx_tuple.size()); ++p)
                for (int q = p + 1; q < static_cast<int>(idx_tuple.size()); ++q)
                    if (got.rel_atom(rel, {p, q}) != expect.rel_atom(rel, {p, q}))
                        throw StructureError("ip_from_collapse: pattern R-type mismatch");
        }
    }
    if (!w.verify())
        throw StructureError("ip_from_collapse: shattering verification failed");
    return w;
}

FinStructure powerset_membership_structure(int n_atoms) {
    if (n_atoms < 0 || n_atoms > 8)
        throw StructureError("powerset_membership_structure: 0 <= n <= 8");
    auto sig = std::make_shared<Signature>(
        Signature{{RelationSpec{"E", 2, {}}}, std::nullopt});
    const int subsets = 1 << n_atoms;
    std::vector<Table> tables(1);
    for (int s = 0; s < subsets; ++s)
        for (int i = 0; i < n_atoms; ++i)
            if ((s >> i) & 1) tables[0].insert({n_atoms + s, i});
    return FinStructure(sig, n_atoms + subsets, std::move(tables));
}

FinStructure parity_graph(int n_ground) {
    if (n_ground < 1 || n_ground > 6) throw StructureError("parity_graph: 1 <= n <= 6");
    auto sig = std::make_shared<Signature>(
        Signature{{RelationSpec{"R", 2, {true, true}}}, std::nullopt});
    const int count = (1 << n_ground) - 1;  // vertex v is the subset v+1
    std::vector<Table> tables(1);
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (__builtin_popcount(static_cast<unsigned>((i + 1) & (j + 1))) % 2 == 1)
                tables[0].insert({i, j});
    return FinStructure(sig, count, std::move(tables));
}

bool adjacency_extension_level2(const FinStructure& g) {
    const int rel = graph_edge_relation(g.signature());
    for (int v = 0; v < g.size(); ++v) {
        bool neighbor = false, non_neighbor = false;
        for (int u = 0; u < g.size(); ++u) {
            if (u == v) continue;
            if (g.holds(rel, {u, v}) || g.holds(rel, {v, u}))
                neighbor = true;
            else
                non_neighbor = true;
        }
        if (!neighbor || !non_neighbor) return false;
    }
    return g.size() > 0;
}

namespace {

NipDemoReport ip_side_demo(const std::string& name, const FinStructure& m,
                           const PartitionedFormula& phi, const PartitionedFormula& phi_sym,
                           int level, int shatter_n) {
    NipDemoReport rep;
    rep.target = name;
    rep.ip_side = true;

    rep.initial_shatter = shatter_check(phi, m, shatter_n);
    if (!rep.initial_shatter) {
        rep.status = Status::inconclusive;
        rep.lines.push_back("no " + std::to_string(shatter_n) + "-shattering found; pipeline halted");
        return rep;
    }
    rep.lines.push_back(std::to_string(shatter_n) + "-shattering verified (" +
                        std::to_string(size_t{1} << shatter_n) + " instances)");

    FormulaSet delta{m.signature_ptr(), {{phi_sym.formula, 2 * phi_sym.object_arity}}};
    SaturationCertificate host = weakly_saturated_ordered_graph(level);
    auto fam0 = code_graph(phi_sym, m, host.structure);
    if (!fam0) {
        rep.status = Status::inconclusive;
        rep.lines.push_back("coding of the level-" + std::to_string(level) +
                            " saturated graph failed");
        return rep;
    }
    rep.lines.push_back("level-" + std::to_string(level) + " saturated graph coded (" +
                        std::to_string(host.structure.size()) + " vertices)");

    IndexedFamily fam1 = extract_indiscernible(*fam0, delta, 2, host.structure);
    rep.lines.push_back("indiscernible extracted over the full index");

    rep.collapse = collapse_analysis(fam1, delta);
    if (!rep.collapse) {
        rep.status = Status::fails;
        rep.lines.push_back("unexpected: no collapse on an IP-side target");
        return rep;
    }
    rep.lines.push_back("collapse found: flip pair (" +
                        std::to_string(rep.collapse->flip.first + 1) + "," +
                        std::to_string(rep.collapse->flip.second + 1) + ")");

    PatternGraph pat = build_pattern_graph(*rep.collapse, 2);
    auto famB = code_graph(phi_sym, m, pat.graph);
    if (!famB) {
        rep.status = Status::inconclusive;
        rep.lines.push_back("pattern graph not codable in the target");
        return rep;
    }
    rep.final_shatter = ip_from_collapse(*rep.collapse, 2, host, *famB);
    rep.lines.push_back("2-shattering synthesized from the collapse (" +
                        std::to_string(rep.final_shatter->instances.size()) + " instances)");
    rep.status = Status::holds;
    return rep;
}

}  // namespace

NipDemoReport run_nip_demo(const std::string& target, int level) {
    if (level < 1) throw StructureError("run_nip_demo: level must be >= 1");
    if (target == "powerset") {
        FinStructure m = powerset_membership_structure(3);
        auto e12 = Formula::rel("E", {0, 1});
        auto e21 = Formula::rel("E", {1, 0});
        PartitionedFormula phi{e12, 1, 1};
        PartitionedFormula phi_sym{Formula::disj({e12, e21}), 1, 1};
        return ip_side_demo(target, m, phi, phi_sym, level, 3);
    }
    if (target == "parity-graph") {
        FinStructure m = parity_graph(5);
        PartitionedFormula phi{Formula::rel("R", {0, 1}), 1, 1};
        NipDemoReport rep = ip_side_demo(target, m, phi, phi, level, 2);
        rep.lines.insert(rep.lines.begin(),
                         std::string("level-2 adjacency extension: ") +
                             (adjacency_extension_level2(m) ? "verified" : "absent"));
        return rep;
    }
    if (target == "linear-order") {
        NipDemoReport rep;
        rep.target = target;
        SaturationCertificate host = weakly_saturated_ordered_graph(level);
        FinStructure m = linear_order(std::max(6, host.structure.size() + 2));
        auto lt = Formula::rel("<", {0, 1});
        PartitionedFormula phi{lt, 1, 1};
        rep.initial_shatter = shatter_check(phi, m, 2);
        if (rep.initial_shatter) {
            rep.status = Status::fails;
            rep.lines.push_back("unexpected: a linear order 2-shattered");
            return rep;
        }
        rep.lines.push_back("no 2-shattering (NIP-consistent)");

        FormulaSet delta{m.signature_ptr(), {{lt, 2}}};
        IndexedFamily fam0{host.structure, m, {}};
        for (int v = 0; v < host.structure.size(); ++v) fam0.map.push_back({v});
        fam0.validate();
        IndexedFamily fam1 = extract_indiscernible(fam0, delta, 2, host.structure);
        rep.collapse = collapse_analysis(fam1, delta);
        if (rep.collapse) {
            rep.status = Status::fails;
            rep.lines.push_back("unexpected: collapse on an order target");
            return rep;
        }
        rep.lines.push_back("order-indiscernible: collapse none");
        rep.status = Status::holds;
        return rep;
    }
    throw StructureError("run_nip_demo: unknown target '" + target +
                         "' (powerset, parity-graph, linear-order)");
}

}  // namespace structlab
