#pragma once

#include <memory>
#include <string>
#include <vector>

#include "structlab/structure.hpp"

namespace structlab {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FormulaKind { rel, eq, and_, or_, not_, implies, exists, forall };

/// First-order formula over a relational signature. Variables are 0-based
/// indices (surface syntax x1, x2, ... is 1-based). Quantifiers bind an
/// explicit variable index.
struct Formula {
    FormulaKind kind;
    std::string rel_name;               // rel
    Tuple vars;                         // rel arguments, or {i, j} for eq
    std::vector<FormulaPtr> children;   // connectives; quantifier body at [0]
    int bound_var = -1;                 // exists / forall

    static FormulaPtr rel(std::string name, Tuple vars);
    static FormulaPtr eq(int i, int j);
    static FormulaPtr conj(std::vector<FormulaPtr> parts);
    static FormulaPtr disj(std::vector<FormulaPtr> parts);
    static FormulaPtr neg(FormulaPtr f);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists(int var, FormulaPtr body);
    static FormulaPtr forall(int var, FormulaPtr body);
};

/// Largest free-variable index + 1 (0 for sentences).
int free_variable_span(const Formula& f);

/// Exhaustive-quantifier evaluation. assignment[i] interprets variable i;
/// entries may be -1 for variables that do not occur free.
bool evaluate(const Formula& f, const FinStructure& m, const Tuple& assignment);

std::string to_string(const Formula& f);

/// Parses one prefix-notation formula: and/or/not/implies/exists/forall,
/// atoms rel(name,x_i,...), eq(x_i,x_j) and lt(x_i,x_j) (sugar for the order
/// symbol). Throws StructureError with position info on bad input.
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

struct DeclaredFormula {
    FormulaPtr formula;
    int arity = 0;  // declared free-variable count x_1..x_arity
};

struct FormulaSet {
    std::shared_ptr<const Signature> signature;
    std::vector<DeclaredFormula> formulas;

    int max_arity() const;
};

/// One formula per non-comment line, optionally prefixed `arity <m>:`;
/// otherwise the arity is the free-variable span.
FormulaSet parse_formula_set(const std::string& text, std::shared_ptr<const Signature> sig);

}  // namespace structlab
