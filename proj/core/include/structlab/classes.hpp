#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "structlab/structure.hpp"

namespace structlab {

enum class Status { holds, fails, inconclusive };

std::string to_string(Status s);

/// Three-valued verdict of a bounded search. The underlying class properties
/// quantify over all finite sizes; bounded checks never overclaim.
template <typename Cert>
struct Verdict {
    Status status = Status::holds;
    std::optional<Cert> certificate;  // present when status == fails
    std::string detail;

    bool holds() const { return status == Status::holds; }
};

/// A class of finite structures given by a membership predicate plus a
/// per-size generator (duplicate-free up to isomorphism).
struct FiniteClass {
    std::string name;
    std::shared_ptr<const Signature> signature;
    std::function<bool(const FinStructure&)> membership;
    std::function<std::vector<FinStructure>(int)> generator;
    int size_cap = 8;
    bool hereditary_hint = false;  // enables the quotient-based amalgam search
};

struct AmalgamationBase {
    FinStructure a, b1, b2;
    Embedding f1, f2;  // A -> B1, A -> B2
};

struct HereditaryCounterexample {
    FinStructure member;
    Tuple subset;
};

struct JepCounterexample {
    FinStructure a, b;
};

struct AmalgamWitness {
    FinStructure c;
    Embedding g1, g2;  // B1 -> C, B2 -> C
};

std::vector<FinStructure> age_up_to(const FinStructure& m, int n);

Verdict<HereditaryCounterexample> hereditary_check(const FiniteClass& k, int n);
Verdict<JepCounterexample> jep_check(const FiniteClass& k, int n);
Verdict<AmalgamationBase> ap_check(const FiniteClass& k, int n);
Verdict<AmalgamationBase> strong_ap_check(const FiniteClass& k, int n);

/// Searches for an amalgam of one base within the class: quotients of the
/// disjoint sum over A (complete for hereditary classes), falling back to a
/// generator scan otherwise.
std::optional<AmalgamWitness> find_amalgam(const FiniteClass& k, const AmalgamationBase& base,
                                           bool strong);

struct HypergraphViolation {
    std::string relation;
    Tuple tuple;
    std::string reason;
};

Verdict<HypergraphViolation> hypergraph_check(const FinStructure& a);

// Built-in corpus
FiniteClass class_ordered_graphs(int size_cap = 8);
FiniteClass class_girth_gt4_ordered_graphs(int size_cap = 8);
FiniteClass class_linear_orders(int size_cap = 12);
FiniteClass class_ordered_hypergraphs(std::shared_ptr<const Signature> sig, int size_cap = 6);

/// All ordered graphs on n vertices, in lexicographic order of their edge
/// bitmask (pair-lexicographic bit order).
std::vector<FinStructure> all_ordered_graphs(int n);

/// true iff the (symmetric) R-relation has no cycle of length 3 or 4.
bool girth_greater_than_4(const FinStructure& g);

}  // namespace structlab
