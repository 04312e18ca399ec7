#pragma once

#include <map>
#include <vector>

#include "structlab/classes.hpp"
#include "structlab/qftype.hpp"
#include "structlab/structure.hpp"

namespace structlab {

/// A finite approximation of the random ordered graph: a host containing an
/// induced copy of every ordered graph on at most `level` vertices, with one
/// verified witness embedding per isomorphism type (keyed by diagram type).
struct SaturationCertificate {
    FinStructure structure;
    int level = 0;
    std::map<QfType, Embedding> witness_map;

    bool verify() const;
};

/// Deterministic level-n construction: the ordered sum of all 2^{n(n-1)/2}
/// ordered graphs on n vertices, in edge-bitmask order. Levels above 4 need
/// the explicit override.
SaturationCertificate weakly_saturated_ordered_graph(int n, bool allow_large = false);

struct MissingExtension {
    Tuple subset;                 // vertices of A, increasing
    std::vector<bool> adjacency;  // required R-edges to each subset vertex
    int order_slot = 0;           // 0..|A|: position of the new vertex in the order
};

/// Level-m one-point extension property: every induced A with |A| < m and
/// every one-point ordered-graph extension of A has a witness vertex in G.
/// Strictly stronger than level-m weak saturation.
Verdict<MissingExtension> extension_property_check(const FinStructure& g, int m);

/// A verified embedding of A into the certified host, from the witness map
/// (fresh search as fallback). Throws when A is larger than the level.
Embedding embed_into(const FinStructure& a, const SaturationCertificate& cert);

}  // namespace structlab
