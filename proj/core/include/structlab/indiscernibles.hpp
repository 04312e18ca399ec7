#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "structlab/classes.hpp"
#include "structlab/formula.hpp"
#include "structlab/qftype.hpp"
#include "structlab/structure.hpp"

namespace structlab {

/// An I-indexed family of same-length tuples from a target structure. The
/// index and target live in independent signatures.
struct IndexedFamily {
    FinStructure index;
    FinStructure target;
    std::vector<Tuple> map;  // map[i] = image tuple of index element i

    int tuple_length() const;
    /// injectivity, uniform tuple length, element ranges
    void validate() const;
};

/// Formula block count: how many index images a formula consumes, with
/// free variables grouped into consecutive length-l blocks.
int block_arity(const DeclaredFormula& f, int tuple_length);

/// The Delta-type of an index tuple: for every formula and every map from its
/// blocks into tuple positions (repeats allowed, lexicographic order), the
/// truth value on the corresponding image blocks.
std::vector<char> delta_type(const IndexedFamily& fam, const FormulaSet& delta,
                             const Tuple& index_tuple);

/// Flat position of (formula, slot map) in a delta_type vector, and back.
std::size_t delta_position(const FormulaSet& delta, int tuple_length, int m, int formula,
                           const Tuple& sigma);
std::pair<int, Tuple> decode_delta_position(const FormulaSet& delta, int tuple_length, int m,
                                            std::size_t position);

struct IndiscernibilityViolation {
    Tuple first, second;  // index tuples with equal qf sub-types
    int formula = 0;      // position in Delta
    Tuple slot_map;       // block-to-position map separating the two
};

/// Generalized indiscernibility over a sub-signature of the index: equal qf
/// sub-types of arbitrary tuples (repeats allowed, arities <= n_max) force
/// equal Delta-types of images.
Verdict<IndiscernibilityViolation> check_indiscernible(const IndexedFamily& fam,
                                                       const std::vector<std::string>& sub,
                                                       const FormulaSet& delta, int n_max);

/// The common Delta-type per realized increasing index type (the p^eta data).
struct IndiscernibleType {
    int n_max = 0;
    std::map<QfType, std::vector<char>> values;  // keyed by increasing qf type
};

/// Requires check_indiscernible over the full index signature; throws with
/// the violating pair otherwise.
IndiscernibleType indiscernible_type(const IndexedFamily& fam, const FormulaSet& delta, int n_max);

struct BasedOnFailure {
    Tuple tuple;  // newer-index tuple with no matching older pattern
};

/// Every newer pattern (tuples up to n_max, repeats allowed) reproduces, via
/// some qf-type-equal older tuple, an already-exhibited Sigma-type.
Verdict<BasedOnFailure> based_on_check(const IndexedFamily& newer, const IndexedFamily& older,
                                       const FormulaSet& sigma, int n_max);

struct ReindexResult {
    std::optional<IndexedFamily> family;
    std::string detail;  // blocking type description on failure
};

/// Re-indexes an indiscernible family along J: finds images realizing the
/// prescribed p^eta values for every increasing J-type. Requires the J type
/// catalogs to be contained in the index's up to n_max.
ReindexResult reindex(const IndexedFamily& fam, const FinStructure& j, const FormulaSet& delta,
                      int n_max);

struct ExtractionStage {
    QfType pattern;           // the stage's increasing qf type q_i
    FinStructure realization; // D_i
    Tuple host_before, host_after;  // index vertex sets, nested
    std::vector<char> color;  // the homogeneous Delta-type color reached
};

struct ExtractionTrace {
    std::vector<ExtractionStage> stages;  // in processing order (q_M .. q_1)
    Tuple final_host;
    IndexedFamily family;
};

struct ExtractionOptions {
    std::uint64_t stage_node_budget = 1u << 20;
};

/// The finite homogeneous-extraction engine: stage by stage (pattern types of
/// arity <= r, processed in reverse enumeration order), colors copies of the
/// stage realization inside the current host by the Delta-type of their
/// images and shrinks the host to a color-homogeneous subset still embedding
/// the shape. Throws naming the blocking stage when no such subset exists.
ExtractionTrace extract_indiscernible_traced(const IndexedFamily& raw, const FormulaSet& delta,
                                             int r, const FinStructure& shape,
                                             const ExtractionOptions& opts = {});

IndexedFamily extract_indiscernible(const IndexedFamily& raw, const FormulaSet& delta, int r,
                                    const FinStructure& shape,
                                    const ExtractionOptions& opts = {});

}  // namespace structlab
