#include "structlab/indiscernibles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace structlab {

namespace {

/// All tuples over 0..n-1 of the given length, lexicographically.
void for_each_tuple(int n, int len, const std::function<void(const Tuple&)>& f) {
    if (len == 0 || n == 0) return;
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
    if (len == 0) return;
}

std::vector<std::string> full_signature_names(const Signature& sig) {
    std::vector<std::string> names;
    for (const auto& r : sig.relations()) names.push_back(r.name);
    return names;
}

bool shape_embeds(const FinStructure& shape, const FinStructure& host) {
    return !enumerate_embeddings(shape, host).empty();
}

}  // namespace

std::size_t delta_position(const FormulaSet& delta, int tuple_length, int m, int formula,
                           const Tuple& sigma) {
    std::size_t pos = 0;
    for (int fi = 0; fi < formula; ++fi) {
        const int k = block_arity(delta.formulas[static_cast<size_t>(fi)], tuple_length);
        std::size_t count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<size_t>(m);
        if (k > 0 && m == 0) count = 0;
        pos += count;
    }
    for (int v : sigma) pos = pos * static_cast<size_t>(m) + static_cast<size_t>(v);
    return pos;
}

std::pair<int, Tuple> decode_delta_position(const FormulaSet& delta, int tuple_length, int m,
                                            std::size_t position) {
    size_t seen = 0;
    for (size_t fi = 0; fi < delta.formulas.size(); ++fi) {
        const int k = block_arity(delta.formulas[fi], tuple_length);
        size_t count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<size_t>(m);
        if (k > 0 && m == 0) count = 0;
        if (position < seen + count) {
            size_t off = position - seen;
            Tuple sigma(static_cast<size_t>(k));
            for (int i = k - 1; i >= 0; --i) {
                sigma[static_cast<size_t>(i)] = static_cast<int>(off % static_cast<size_t>(m ? m : 1));
                off /= static_cast<size_t>(m ? m : 1);
            }
            return {static_cast<int>(fi), sigma};
        }
        seen += count;
    }
    return {-1, {}};
}

int IndexedFamily::tuple_length() const {
    return map.empty() ? 0 : static_cast<int>(map.front().size());
}

void IndexedFamily::validate() const {
    if (static_cast<int>(map.size()) != index.size())
        throw StructureError("family: map must cover the index domain");
    const int l = tuple_length();
    if (index.size() > 0 && l == 0)
        throw StructureError("family: image tuples must be nonempty");
    for (const auto& t : map) {
        if (static_cast<int>(t.size()) != l)
            throw StructureError("family: image tuples must share one length");
        for (int v : t)
            if (v < 0 || v >= target.size())
                throw StructureError("family: image element out of range");
    }
    for (size_t i = 0; i < map.size(); ++i)
        for (size_t j = i + 1; j < map.size(); ++j)
            if (map[i] == map[j]) throw StructureError("family: image tuples must be distinct");
}

int block_arity(const DeclaredFormula& f, int tuple_length) {
    if (tuple_length <= 0) return f.arity == 0 ? 0 : f.arity;
    return (f.arity + tuple_length - 1) / tuple_length;
}

std::vector<char> delta_type(const IndexedFamily& fam, const FormulaSet& delta,
                             const Tuple& index_tuple) {
    const int l = fam.tuple_length();
    const int m = static_cast<int>(index_tuple.size());
    std::vector<char> out;
    for (const auto& df : delta.formulas) {
        const int k = block_arity(df, l);
        if (k > 0 && m == 0) continue;
        Tuple sigma(static_cast<size_t>(k), 0);
        while (true) {
            Tuple assignment(static_cast<size_t>(k) * static_cast<size_t>(l));
            for (int b = 0; b < k; ++b) {
                const Tuple& image =
                    fam.map[static_cast<size_t>(index_tuple[static_cast<size_t>(sigma[static_cast<size_t>(b)])])];
                for (int p = 0; p < l; ++p)
                    assignment[static_cast<size_t>(b * l + p)] = image[static_cast<size_t>(p)];
            }
            out.push_back(evaluate(*df.formula, fam.target, assignment) ? 1 : 0);
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && sigma[static_cast<size_t>(pos)] == m - 1) {
                sigma[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++sigma[static_cast<size_t>(pos)];
        }
    }
    return out;
}

Verdict<IndiscernibilityViolation> check_indiscernible(const IndexedFamily& fam,
                                                       const std::vector<std::string>& sub,
                                                       const FormulaSet& delta, int n_max) {
    fam.validate();
    FinStructure sub_index = reduct(fam.index, sub);
    std::optional<IndiscernibilityViolation> violation;
    for (int m = 1; m <= n_max && !violation; ++m) {
        std::map<QfType, std::pair<Tuple, std::vector<char>>> seen;
        for_each_tuple(fam.index.size(), m, [&](const Tuple& tuple) {
            if (violation) return;
            QfType key = qftype_of(tuple, sub_index);
            std::vector<char> value = delta_type(fam, delta, tuple);
            auto [it, inserted] = seen.emplace(std::move(key), std::make_pair(tuple, value));
            if (inserted || it->second.second == value) return;
            size_t pos = 0;
            while (it->second.second[pos] == value[pos]) ++pos;
            auto [fi, sigma] = decode_delta_position(delta, fam.tuple_length(), m, pos);
            violation = IndiscernibilityViolation{it->second.first, tuple, fi, sigma};
        });
    }
    if (violation)
        return {Status::fails, *violation, "equal index types with different Delta-types"};
    return {Status::holds, std::nullopt, ""};
}

IndiscernibleType indiscernible_type(const IndexedFamily& fam, const FormulaSet& delta,
                                     int n_max) {
    auto check = check_indiscernible(fam, full_signature_names(fam.index.signature()), delta, n_max);
    if (!check.holds()) {
        std::ostringstream msg;
        msg << "indiscernible_type: family is not indiscernible (tuples";
        for (int v : check.certificate->first) msg << " " << v;
        msg << " vs";
        for (int v : check.certificate->second) msg << " " << v;
        msg << ")";
        throw StructureError(msg.str());
    }
    IndiscernibleType out{n_max, {}};
    for (int m = 1; m <= n_max; ++m)
        for_each_increasing(fam.index.size(), m, [&](const Tuple& tuple) {
            out.values.emplace(qftype_of(tuple, fam.index), delta_type(fam, delta, tuple));
        });
    return out;
}

Verdict<BasedOnFailure> based_on_check(const IndexedFamily& newer, const IndexedFamily& older,
                                       const FormulaSet& sigma, int n_max) {
    newer.validate();
    older.validate();
    if (newer.index.signature() != older.index.signature())
        throw StructureError("based_on_check: index signatures differ");
    if (newer.target.signature() != older.target.signature())
        throw StructureError("based_on_check: target signatures differ");
    for (int m = 1; m <= n_max; ++m) {
        std::map<QfType, std::set<std::vector<char>>> exhibited;
        for_each_tuple(older.index.size(), m, [&](const Tuple& t) {
            exhibited[qftype_of(t, older.index)].insert(delta_type(older, sigma, t));
        });
        std::optional<BasedOnFailure> failure;
        for_each_tuple(newer.index.size(), m, [&](const Tuple& s) {
            if (failure) return;
            auto it = exhibited.find(qftype_of(s, newer.index));
            if (it == exhibited.end() || !it->second.count(delta_type(newer, sigma, s)))
                failure = BasedOnFailure{s};
        });
        if (failure)
            return {Status::fails, *failure, "pattern has no qf-type-equal older realization"};
    }
    return {Status::holds, std::nullopt, ""};
}

ReindexResult reindex(const IndexedFamily& fam, const FinStructure& j, const FormulaSet& delta,
                      int n_max) {
    fam.validate();
    if (j.signature() != fam.index.signature())
        throw StructureError("reindex: index signatures differ");
    for (int m = 1; m <= std::min(n_max, j.size()); ++m) {
        auto jc = type_catalog(j, m);
        auto ic = type_catalog(fam.index, std::min(m, fam.index.size()));
        for (const auto& t : jc.entries)
            if (!ic.entries.count(t))
                throw StructureError("reindex: J realizes a type absent from the index (arity " +
                                     std::to_string(m) + ")");
    }
    IndiscernibleType itype = indiscernible_type(fam, delta, n_max);
    const int l = fam.tuple_length();

    std::vector<Tuple> candidates;
    for_each_tuple(fam.target.size(), l, [&](const Tuple& t) { candidates.push_back(t); });

    IndexedFamily work{j, fam.target, std::vector<Tuple>(static_cast<size_t>(j.size()))};
    std::string blocking;
    int deepest = -1;

    std::function<bool(int)> assign = [&](int v) -> bool {
        if (v == j.size()) return true;
        for (const auto& cand : candidates) {
            bool taken = false;
            for (int u = 0; u < v && !taken; ++u)
                if (work.map[static_cast<size_t>(u)] == cand) taken = true;
            if (taken) continue;
            work.map[static_cast<size_t>(v)] = cand;
            bool ok = true;
            for (int m = 1; m <= std::min(n_max, v + 1) && ok; ++m) {
                // increasing tuples of assigned vertices ending at v
                Tuple tuple(static_cast<size_t>(m));
                tuple[static_cast<size_t>(m - 1)] = v;
                std::function<bool(int, int)> scan = [&](int depth, int max_next) -> bool {
                    if (depth < 0) {
                        QfType eta = qftype_of(tuple, j);
                        auto it = itype.values.find(eta);
                        if (it == itype.values.end() || it->second != delta_type(work, delta, tuple)) {
                            if (v > deepest) {
                                deepest = v;
                                blocking = eta.to_string();
                            }
                            return false;
                        }
                        return true;
                    }
                    for (int u = depth; u <= max_next; ++u) {
                        tuple[static_cast<size_t>(depth)] = u;
                        if (!scan(depth - 1, u - 1)) return false;
                    }
                    return true;
                };
                ok = scan(m - 2, v - 1);
            }
            if (ok && assign(v + 1)) return true;
        }
        work.map[static_cast<size_t>(v)].clear();
        return false;
    };

    if (!assign(0))
        return {std::nullopt, blocking.empty() ? "no assignment found"
                                               : "blocking type " + blocking};
    work.validate();
    auto check = check_indiscernible(work, full_signature_names(j.signature()), delta, n_max);
    auto based = based_on_check(work, fam, delta, n_max);
    if (!check.holds() || !based.holds())
        return {std::nullopt, "verification of the reindexed family failed"};
    return {work, ""};
}

namespace {

uint64_t to_bits(const Tuple& vs) {
    uint64_t b = 0;
    for (int v : vs) b |= uint64_t{1} << v;
    return b;
}

Tuple from_bits(uint64_t b) {
    Tuple out;
    for (int v = 0; v < 64; ++v)
        if ((b >> v) & 1) out.push_back(v);
    return out;
}

struct StageCopy {
    Tuple vertices;  // increasing, global index vertices
    uint64_t bits;
    int color;  // palette id
};

}  // namespace

ExtractionTrace extract_indiscernible_traced(const IndexedFamily& raw, const FormulaSet& delta,
                                             int r, const FinStructure& shape,
                                             const ExtractionOptions& opts) {
    raw.validate();
    if (!raw.index.ordered())
        throw StructureError("extract_indiscernible: the index must be ordered");
    if (raw.index.size() > 64)
        throw StructureError("extract_indiscernible: index too large");
    for (const auto& df : delta.formulas)
        if (block_arity(df, raw.tuple_length()) > r)
            throw StructureError("extract_indiscernible: r below a formula's block arity");
    if (!shape_embeds(shape, raw.index))
        throw StructureError("extract_indiscernible: shape does not embed into the index");

    // stage patterns: realized increasing types, arity ascending then
    // lexicographic encoding order; processed in reverse
    struct Stage {
        QfType pattern;
        FinStructure realization;
    };
    std::vector<Stage> stages;
    for (int m = 1; m <= std::min(r, raw.index.size()); ++m) {
        for (const auto& q : type_catalog(raw.index, m).entries) {
            FinStructure d;
            bool found = false;
            for_each_increasing(raw.index.size(), m, [&](const Tuple& combo) {
                if (found || qftype_of(combo, raw.index) != q) return;
                d = induced_substructure(raw.index, combo);
                found = true;
            });
            stages.push_back({q, std::move(d)});
        }
    }

    ExtractionTrace trace;
    uint64_t host = (raw.index.size() == 64) ? ~uint64_t{0}
                                             : (uint64_t{1} << raw.index.size()) - 1;

    for (size_t si = stages.size(); si-- > 0;) {
        const Stage& stage = stages[si];
        const int m = stage.pattern.arity();

        // copies of the stage realization in the current host = increasing
        // host tuples realizing the pattern, colored by their image
        // Delta-type
        std::vector<StageCopy> copies;
        std::vector<std::vector<char>> palette;
        {
            Tuple host_vs = from_bits(host);
            Tuple combo(static_cast<size_t>(m));
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == m) {
                    if (qftype_of(combo, raw.index) != stage.pattern) return;
                    auto color = delta_type(raw, delta, combo);
                    int id = -1;
                    for (size_t p = 0; p < palette.size(); ++p)
                        if (palette[p] == color) id = static_cast<int>(p);
                    if (id < 0) {
                        id = static_cast<int>(palette.size());
                        palette.push_back(std::move(color));
                    }
                    copies.push_back({combo, to_bits(combo), id});
                    return;
                }
                for (int i = start; i <= static_cast<int>(host_vs.size()) - (m - depth); ++i) {
                    combo[static_cast<size_t>(depth)] = host_vs[static_cast<size_t>(i)];
                    rec(i + 1, depth + 1);
                }
            };
            rec(0, 0);
        }

        ExtractionStage record;
        record.pattern = stage.pattern;
        record.realization = stage.realization;
        record.host_before = from_bits(host);

        if (!copies.empty() && palette.size() > 1) {
            // candidate colors by descending frequency, ties by first use
            std::vector<int> freq(palette.size(), 0);
            for (const auto& c : copies) ++freq[static_cast<size_t>(c.color)];
            std::vector<int> order(palette.size());
            for (size_t p = 0; p < order.size(); ++p) order[p] = static_cast<int>(p);
            std::stable_sort(order.begin(), order.end(),
                             [&](int x, int y) { return freq[static_cast<size_t>(x)] > freq[static_cast<size_t>(y)]; });

            std::optional<uint64_t> result;
            int chosen = -1;
            for (int target_color : order) {
                std::set<uint64_t> visited;
                std::uint64_t nodes = 0;
                bool budget_hit = false;
                std::function<std::optional<uint64_t>(uint64_t)> shrink =
                    [&](uint64_t s) -> std::optional<uint64_t> {
                    if (++nodes > opts.stage_node_budget) {
                        budget_hit = true;
                        return std::nullopt;
                    }
                    {
                        FinStructure sub = induced_substructure(raw.index, from_bits(s));
                        if (!shape_embeds(shape, sub)) return std::nullopt;
                    }
                    const StageCopy* offender = nullptr;
                    for (const auto& c : copies)
                        if ((c.bits & s) == c.bits && c.color != target_color) {
                            offender = &c;
                            break;
                        }
                    if (!offender) return s;
                    for (int v : offender->vertices) {
                        uint64_t next = s & ~(uint64_t{1} << v);
                        if (!visited.insert(next).second) continue;
                        auto got = shrink(next);
                        if (got) return got;
                        if (budget_hit) return std::nullopt;
                    }
                    return std::nullopt;
                };
                auto got = shrink(host);
                if (got) {
                    result = got;
                    chosen = target_color;
                    break;
                }
                if (budget_hit)
                    throw StructureError(
                        "extract_indiscernible: stage budget exhausted at pattern " +
                        stage.pattern.to_string());
            }
            if (!result)
                throw StructureError(
                    "extract_indiscernible: no homogeneous host embeds the shape at pattern " +
                    stage.pattern.to_string());
            host = *result;
            record.color = palette[static_cast<size_t>(chosen)];
        } else if (!copies.empty()) {
            record.color = palette.front();
        }

        record.host_after = from_bits(host);
        trace.stages.push_back(std::move(record));
    }

    trace.final_host = from_bits(host);
    FinStructure final_sub = induced_substructure(raw.index, trace.final_host);
    auto shape_copies = enumerate_copies(shape, final_sub);
    if (shape_copies.empty())
        throw StructureError("extract_indiscernible: final host lost the shape");
    const Embedding& rep = shape_copies.front().rep;

    IndexedFamily out{shape, raw.target, {}};
    out.map.resize(static_cast<size_t>(shape.size()));
    for (int v = 0; v < shape.size(); ++v) {
        int global = trace.final_host[static_cast<size_t>(rep.map[static_cast<size_t>(v)])];
        out.map[static_cast<size_t>(v)] = raw.map[static_cast<size_t>(global)];
    }
    out.validate();
    trace.family = std::move(out);
    return trace;
}

IndexedFamily extract_indiscernible(const IndexedFamily& raw, const FormulaSet& delta, int r,
                                    const FinStructure& shape, const ExtractionOptions& opts) {
    return extract_indiscernible_traced(raw, delta, r, shape, opts).family;
}

}  // namespace structlab
