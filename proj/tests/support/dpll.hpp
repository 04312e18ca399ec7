#pragma once

// Minimal DPLL solver over DIMACS documents. Test-only oracle: complete on
// the small CNF instances the suite generates, independent of the encoder.

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

struct Cnf {
    int vars = 0;
    std::vector<std::vector<int>> clauses;
};

inline Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream in(line);
            std::string p, fmt;
            int clause_count = 0;
            in >> p >> fmt >> cnf.vars >> clause_count;
            continue;
        }
        std::istringstream in(line);
        std::vector<int> clause;
        int lit = 0;
        while (in >> lit && lit != 0) clause.push_back(lit);
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

// 0 = unassigned, 1 = true, -1 = false
inline bool dpll(const Cnf& cnf, std::vector<int>& assign) {
    // unit propagation to fixpoint
    std::vector<int> trail;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& clause : cnf.clauses) {
            int unassigned = 0, last = 0;
            bool satisfied = false;
            for (int lit : clause) {
                int v = assign[static_cast<size_t>(std::abs(lit))];
                if (v == 0) {
                    ++unassigned;
                    last = lit;
                } else if ((v > 0) == (lit > 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) {
                for (int lit : trail) assign[static_cast<size_t>(std::abs(lit))] = 0;
                return false;
            }
            if (unassigned == 1) {
                assign[static_cast<size_t>(std::abs(last))] = last > 0 ? 1 : -1;
                trail.push_back(last);
                changed = true;
            }
        }
    }
    int branch = 0;
    for (int v = 1; v <= cnf.vars; ++v)
        if (assign[static_cast<size_t>(v)] == 0) {
            branch = v;
            break;
        }
    if (branch == 0) return true;
    for (int value : {1, -1}) {
        assign[static_cast<size_t>(branch)] = value;
        if (dpll(cnf, assign)) return true;
    }
    assign[static_cast<size_t>(branch)] = 0;
    for (int lit : trail) assign[static_cast<size_t>(std::abs(lit))] = 0;
    return false;
}

/// Positive/negative literal model, or nullopt when unsatisfiable.
inline std::optional<std::vector<int>> solve_dimacs(const std::string& text) {
    Cnf cnf = parse_dimacs(text);
    std::vector<int> assign(static_cast<size_t>(cnf.vars) + 1, 0);
    if (!dpll(cnf, assign)) return std::nullopt;
    std::vector<int> model;
    for (int v = 1; v <= cnf.vars; ++v) model.push_back(assign[static_cast<size_t>(v)] >= 0 ? v : -v);
    return model;
}

}  // namespace testsupport
