// The two inference rules: condensed detachment (D) and reverse condensed
// detachment (R), with instance-size reporting.
#pragma once

#include <optional>

#include "eqc/formula.hpp"
#include "eqc/unify.hpp"

namespace eqc {

// Result of one D or R application. The instance lengths are the symbol
// lengths of the unified major and minor premiss instances; they can dwarf
// the result (step D12.16 of the embedded proof instantiates its premisses
// to 2939 and 2919 symbols while the conclusion has 19).
struct DetachmentOutcome {
    CanonicalFormula result;
    int major_instance_length = 0;
    int minor_instance_length = 0;
};

namespace detail {

inline std::optional<DetachmentOutcome> detach_impl(const FormulaPtr& major,
                                                    const FormulaPtr& minor,
                                                    bool reverse) {
    if (major->is_variable()) return std::nullopt;  // a variable has no antecedent
    std::vector<std::string> major_vars = variables(major);
    std::unordered_set<std::string> forbidden(major_vars.begin(), major_vars.end());
    FormulaPtr fresh_minor = rename_apart(minor, forbidden);
    const FormulaPtr& unified_side = reverse ? major->rhs() : major->lhs();
    const FormulaPtr& kept_side = reverse ? major->lhs() : major->rhs();
    std::optional<Substitution> sigma = most_general_unifier(unified_side, fresh_minor);
    if (!sigma) return std::nullopt;
    DetachmentOutcome out;
    out.result = canonical_form(sigma->apply(kept_side));
    out.major_instance_length = sigma->apply(major)->symbol_length();
    out.minor_instance_length = sigma->apply(fresh_minor)->symbol_length();
    return out;
}

}  // namespace detail

// D: rename the minor apart from the major, unify the major's antecedent
// with it, and return the canonical form of the substituted consequent.
// Inapplicable (nullopt) when the major is a bare variable or unification
// fails. The canonical result does not depend on how either input is named.
inline std::optional<DetachmentOutcome> condensed_detach(const FormulaPtr& major,
                                                         const FormulaPtr& minor) {
    return detail::detach_impl(major, minor, false);
}

// R: symmetric to D but unifies the major's consequent and returns the
// substituted antecedent. Sound for two-valued tautologies because E is a
// biconditional.
inline std::optional<DetachmentOutcome> reverse_condensed_detach(
    const FormulaPtr& major, const FormulaPtr& minor) {
    return detail::detach_impl(major, minor, true);
}

// Iterated condensed detachment with f as the minor each round:
// D(f, f), D(D(f, f), f), ... Stops early at the first inapplicable step,
// whose 1-based index is reported.
struct ChainResult {
    std::vector<CanonicalFormula> lines;
    std::optional<int> failed_step;
};

inline ChainResult self_detach_chain(const FormulaPtr& f, int n) {
    ChainResult out;
    FormulaPtr major = f;
    for (int step = 1; step <= n; ++step) {
        std::optional<DetachmentOutcome> d = condensed_detach(major, f);
        if (!d) {
            out.failed_step = step;
            return out;
        }
        out.lines.push_back(d->result);
        major = d->result.formula();
    }
    return out;
}

}  // namespace eqc
