#include "structlab/fraisse.hpp"

#include <algorithm>

namespace structlab {

namespace {

/// Identity-block embedding of the first `m` vertices of block `j`.
Embedding block_embedding(const FinStructure& source, const FinStructure& host, int offset,
                          int m) {
    Tuple map(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) map[static_cast<size_t>(i)] = offset + i;
    return Embedding{source, host, std::move(map)};
}

}  // namespace

bool SaturationCertificate::verify() const {
    for (int m = 1; m <= level; ++m) {
        for (const auto& g : all_ordered_graphs(m)) {
            auto it = witness_map.find(diagram_type(g));
            if (it == witness_map.end()) return false;
            const Embedding& e = it->second;
            if (!e.source.same_tables(g)) return false;
            if (!e.target.same_tables(structure)) return false;
            if (!e.valid()) return false;
        }
    }
    return true;
}

SaturationCertificate weakly_saturated_ordered_graph(int n, bool allow_large) {
    if (n < 1) throw StructureError("weakly_saturated_ordered_graph: level must be >= 1");
    if (n > 5 || (n > 4 && !allow_large))
        throw StructureError("weakly_saturated_ordered_graph: level exceeds the budget");

    std::vector<FinStructure> blocks = all_ordered_graphs(n);
    FinStructure host = ordered_sum(blocks);

    // block index by diagram type, for padded lookups of smaller graphs
    std::map<QfType, int> block_index;
    for (size_t i = 0; i < blocks.size(); ++i)
        block_index.emplace(diagram_type(blocks[i]), static_cast<int>(i));

    SaturationCertificate cert{host, n, {}};
    for (int m = 1; m <= n; ++m) {
        for (const auto& g : all_ordered_graphs(m)) {
            // pad with trailing isolated vertices; the padded graph is one of
            // the blocks and g sits on its first m vertices
            std::vector<std::pair<int, int>> edges;
            const int rel = g.signature().relation_index("R");
            for (const Tuple& t : g.table(rel))
                if (t[0] < t[1]) edges.emplace_back(t[0], t[1]);
            FinStructure padded = ordered_graph(n, edges);
            int j = block_index.at(diagram_type(padded));
            cert.witness_map.emplace(diagram_type(g), block_embedding(g, host, j * n, m));
        }
    }
    return cert;
}

Verdict<MissingExtension> extension_property_check(const FinStructure& g, int m) {
    if (!g.ordered() || g.signature() != Signature::ordered_graph())
        throw StructureError("extension_property_check: expected an ordered graph");
    const int rel = g.signature().relation_index("R");
    const int n = g.size();

    std::optional<MissingExtension> missing;
    Tuple subset;
    std::function<void(int)> scan = [&](int start) {
        if (missing) return;
        const int s = static_cast<int>(subset.size());
        for (uint64_t bits = 0; bits < (uint64_t{1} << s); ++bits) {
            for (int slot = 0; slot <= s; ++slot) {
                bool witnessed = false;
                for (int v = 0; v < n && !witnessed; ++v) {
                    if (std::binary_search(subset.begin(), subset.end(), v)) continue;
                    bool ok = true;
                    int pos = 0;
                    for (int i = 0; i < s && ok; ++i) {
                        bool want = (bits >> i) & 1;
                        if (g.holds(rel, {v, subset[static_cast<size_t>(i)]}) != want) ok = false;
                        if (subset[static_cast<size_t>(i)] < v) ++pos;
                    }
                    if (ok && pos == slot) witnessed = true;
                }
                if (!witnessed) {
                    std::vector<bool> adj(static_cast<size_t>(s));
                    for (int i = 0; i < s; ++i) adj[static_cast<size_t>(i)] = (bits >> i) & 1;
                    missing = MissingExtension{subset, adj, slot};
                    return;
                }
            }
        }
        if (s + 1 >= m) return;
        for (int v = start; v < n; ++v) {
            subset.push_back(v);
            scan(v + 1);
            subset.pop_back();
            if (missing) return;
        }
    };
    if (m >= 1) scan(0);
    if (missing)
        return {Status::fails, *missing, "one-point extension has no witness vertex"};
    return {Status::holds, std::nullopt, ""};
}

Embedding embed_into(const FinStructure& a, const SaturationCertificate& cert) {
    if (a.size() > cert.level) throw StructureError("embed_into: structure larger than the level");
    auto it = cert.witness_map.find(diagram_type(a));
    if (it != cert.witness_map.end()) {
        Embedding e{a, cert.structure, it->second.map};
        if (e.valid()) return e;
    }
    auto embeddings = enumerate_embeddings(a, cert.structure);
    if (embeddings.empty()) throw StructureError("embed_into: no embedding found");
    return embeddings.front();
}

}  // namespace structlab
