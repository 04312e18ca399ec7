#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "structlab/classes.hpp"
#include "structlab/structure.hpp"

namespace structlab {

/// A k-coloring of the A-copies of C. Colors are 1..k; the assignment is
/// indexed by copy position in enumerate_copies(A, C) order.
struct Coloring {
    FinStructure a;
    FinStructure c;
    int k = 1;
    std::vector<int> assignment;

    bool valid() const;
};

enum class ArrowMode { exhaustive, search, cnf };

struct ArrowVerdict {
    Status status = Status::inconclusive;
    std::optional<Coloring> bad_coloring;  // present when status == fails
    /// Exhaustive mode, small instances only: homogeneous B-copy index per
    /// coloring index (colorings in lexicographic assignment order).
    std::optional<std::vector<int>> homogeneity_certificates;
    std::uint64_t colorings_checked = 0;
    std::string detail;

    bool holds() const { return status == Status::holds; }
};

struct ArrowOptions {
    std::uint64_t budget = std::uint64_t{1} << 24;  // exhaustive colorings / search nodes
    int jobs = 1;
    /// Retain per-coloring homogeneity certificates up to this many colorings.
    std::uint64_t certificate_budget = std::uint64_t{1} << 16;
    /// cnf mode: returns a DIMACS model (positive/negative literals) or
    /// nullopt for UNSAT. Absent solver makes cnf mode inconclusive.
    std::function<std::optional<std::vector<int>>(const std::string&)> solver;
};

/// Lexicographically least B-copy of coloring.c whose A-subcopies all share
/// one color (vacuously homogeneous when it contains none).
std::optional<Copy> find_homogeneous(const FinStructure& b, const Coloring& coloring);

/// Backtracking search for a coloring with no homogeneous B-copy. Complete
/// within the node budget; nullopt means none exists (when the search ran to
/// completion) or the budget ran out -- check_arrow distinguishes the two.
std::optional<Coloring> bad_coloring_search(const FinStructure& c, const FinStructure& b,
                                            const FinStructure& a, int k,
                                            const ArrowOptions& opts = {});

/// Decides C -> (B)^A_k.
ArrowVerdict check_arrow(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                         int k, ArrowMode mode = ArrowMode::exhaustive,
                         const ArrowOptions& opts = {});

/// DIMACS CNF encoding of bad-coloring existence: var(i,j) = (i-1)*k + j for
/// 1-based copy index i and color j. Satisfiable iff the arrow fails.
std::string export_cnf(const FinStructure& c, const FinStructure& b, const FinStructure& a, int k);

/// Reads a model of export_cnf's document back into a coloring.
Coloring decode_cnf_model(const FinStructure& c, const FinStructure& a, int k,
                          const std::vector<int>& model);

struct RamseyWitness {
    Status status = Status::inconclusive;
    std::optional<FinStructure> witness;  // present when status == holds
    std::string detail;
};

/// First member of K (generator order, by size up to cap) satisfying
/// C -> (B)^A_k.
RamseyWitness ramsey_witness_search(const FiniteClass& k_class, const FinStructure& b,
                                    const FinStructure& a, int k, int cap,
                                    const ArrowOptions& opts = {});

}  // namespace structlab
