#pragma once

#include <optional>
#include <string>
#include <vector>

#include "structlab/fraisse.hpp"
#include "structlab/indiscernibles.hpp"

namespace structlab {

/// phi(x; y): object variables x_1..x_object, then parameter variables.
struct PartitionedFormula {
    FormulaPtr formula;
    int object_arity = 0;
    int parameter_arity = 0;
};

/// A verified n-shattering: instances b_t (one per subset w_t of the
/// parameter positions) with phi(b_t; a_i) iff i is in w_t.
struct ShatterWitness {
    PartitionedFormula phi;
    FinStructure target;
    int n = 0;
    std::vector<Tuple> parameters;          // a_1..a_n
    std::vector<Tuple> instances;           // b_t, one per subset, 2^n of them
    std::vector<std::vector<int>> subsets;  // w_t as 0-based parameter positions

    bool verify() const;
};

std::optional<ShatterWitness> shatter_check(const PartitionedFormula& phi, const FinStructure& m,
                                            int n, std::uint64_t budget = std::uint64_t{1} << 26);

/// Finds an injection of G's vertices into target tuples with
/// phi(a_g, a_h) iff R(g, h), for all pairs. phi must be symmetric on M.
std::optional<IndexedFamily> code_graph(const PartitionedFormula& phi, const FinStructure& m,
                                        const FinStructure& g);

/// Where an order-indiscernibility failure collapses to: a single flipped
/// R-atom between two complete index types, re-based over a common tuple.
struct CollapseReport {
    DeclaredFormula theta;  // the separating formula
    int formula = 0;        // its position in Delta
    Tuple slot_map;         // block-to-position map at which the values differ
    int n = 0;              // index arity under comparison

    QfType type_a, type_b;              // same order type, different theta-values
    QfType normalized_a, normalized_b;  // walk crossing pair, one R-bit apart
    std::pair<int, int> flip;           // 0-based position pair (k, l)

    Tuple common;               // index elements shared off the flip positions
    std::pair<int, int> pair_i; // realization of the R-negative side at (k, l)
    std::pair<int, int> pair_j; // realization of the R-positive side at (k, l)

    QfType f_type, g_type;  // complete types (z1, z2, commons); F has R(z1,z2)
    bool theta_on_f = false;
};

/// none when the family is order-indiscernible; otherwise the normalized
/// collapse data. Throws when a walk step's type is unrealized in the index.
std::optional<CollapseReport> collapse_analysis(const IndexedFamily& fam, const FormulaSet& delta);

/// The shattering pattern graph B for level m: y_s per subset s, z_1..z_m,
/// u-vertices carrying the common tuple's type; R(y_s, z_t) iff t in s.
struct PatternGraph {
    FinStructure graph;
    std::vector<int> y_vertices;  // by subset bitmask
    std::vector<int> z_vertices;  // z_1..z_m
    std::vector<int> u_vertices;  // commons, in report order
};

PatternGraph build_pattern_graph(const CollapseReport& report, int m);

/// Synthesizes and verifies an m-shattering from a collapse: embeds the
/// pattern graph into fam's index, pulls parameters through fam, and checks
/// the F-implies-theta / G-implies-not-theta dichotomy by evaluation.
ShatterWitness ip_from_collapse(const CollapseReport& report, int m,
                                const SaturationCertificate& host, const IndexedFamily& fam);

// Built-in demonstration targets
/// [n] together with P([n]); E(s, x) iff x in s. Atoms come first.
FinStructure powerset_membership_structure(int n_atoms);
/// Nonempty subsets of [n_ground], adjacent when the intersection is odd.
FinStructure parity_graph(int n_ground);
/// Unordered level-2 extension check: every vertex has a neighbor and a
/// non-neighbor (the ordered checker's slot semantics does not apply).
bool adjacency_extension_level2(const FinStructure& g);

struct NipDemoReport {
    std::string target;
    Status status = Status::inconclusive;
    bool ip_side = false;
    std::optional<ShatterWitness> initial_shatter;
    std::optional<CollapseReport> collapse;
    std::optional<ShatterWitness> final_shatter;
    std::vector<std::string> lines;  // narrative, one display line each
};

/// Full pipeline on a built-in target: "powerset", "parity-graph" (IP side)
/// or "linear-order" (NIP side). level picks the saturated index level.
NipDemoReport run_nip_demo(const std::string& target, int level);

}  // namespace structlab
