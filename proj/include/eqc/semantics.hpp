// Two-valued semantics of pure-E formulas: E is the classical biconditional.
#pragma once

#include <algorithm>

#include "eqc/formula.hpp"

namespace eqc {

using Assignment = std::map<std::string, bool>;

struct MissingVariable : std::runtime_error {
    explicit MissingVariable(const std::string& var)
        : std::runtime_error("assignment does not cover variable '" + var + "'"),
          variable(var) {}
    std::string variable;
};

inline bool evaluate(const FormulaPtr& f, const Assignment& assignment) {
    if (f->is_variable()) {
        auto it = assignment.find(f->name());
        if (it == assignment.end()) throw MissingVariable(f->name());
        return it->second;
    }
    return evaluate(f->lhs(), assignment) == evaluate(f->rhs(), assignment);
}

// Truth-table decision, the semantic ground truth. Variables are taken in
// lexicographic order and assignments in binary counting order (first
// variable is the most significant bit), so any per-assignment reporting a
// caller builds on top of this is deterministic.
inline bool is_tautology(const FormulaPtr& f) {
    std::vector<std::string> vars = variables(f);
    std::sort(vars.begin(), vars.end());
    const std::size_t k = vars.size();
    Assignment assignment;
    for (const auto& v : vars) assignment[v] = false;
    for (unsigned long long mask = 0; mask < (1ULL << k); ++mask) {
        for (std::size_t i = 0; i < k; ++i)
            assignment[vars[i]] = (mask >> (k - 1 - i)) & 1ULL;
        if (!evaluate(f, assignment)) return false;
    }
    return true;
}

// Folklore criterion for pure-E tautologies, used as an independent oracle:
// a formula is a thesis iff every variable occurs an even number of times.
// No truth tables involved, so the two routes genuinely cross-check.
inline bool even_occurrence_predicate(const FormulaPtr& f) {
    for (const auto& [var, count] : occurrence_counts(f))
        if (count % 2 != 0) return false;
    return true;
}

}  // namespace eqc
