// Substitutions and Robinson unification with occurs check.
#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "eqc/formula.hpp"

namespace eqc {

// Finite map from variable names to formulas. Substitutions produced by
// most_general_unifier are fully resolved: no bound variable occurs in any
// image, so applying one is idempotent.
class Substitution {
public:
    Substitution() = default;
    explicit Substitution(std::map<std::string, FormulaPtr> bindings)
        : bindings_(std::move(bindings)) {}

    const std::map<std::string, FormulaPtr>& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }

    const FormulaPtr* lookup(const std::string& var) const {
        auto it = bindings_.find(var);
        return it == bindings_.end() ? nullptr : &it->second;
    }

    // Simultaneous replacement of every bound variable by its image.
    // Memoized on node identity so shared substructure is rebuilt once.
    FormulaPtr apply(const FormulaPtr& f) const {
        std::unordered_map<const Formula*, FormulaPtr> memo;
        return apply_memo(f, memo);
    }

private:
    FormulaPtr apply_memo(const FormulaPtr& f,
                          std::unordered_map<const Formula*, FormulaPtr>& memo) const {
        if (f->is_variable()) {
            if (const FormulaPtr* image = lookup(f->name())) return *image;
            return f;
        }
        auto it = memo.find(f.get());
        if (it != memo.end()) return it->second;
        FormulaPtr lhs = apply_memo(f->lhs(), memo);
        FormulaPtr rhs = apply_memo(f->rhs(), memo);
        FormulaPtr out = (lhs.get() == f->lhs().get() && rhs.get() == f->rhs().get())
                             ? f
                             : Formula::equiv(std::move(lhs), std::move(rhs));
        memo.emplace(f.get(), out);
        return out;
    }

    std::map<std::string, FormulaPtr> bindings_;
};

// apply(compose(outer, inner), f) == apply(outer, apply(inner, f)).
inline Substitution compose(const Substitution& outer, const Substitution& inner) {
    std::map<std::string, FormulaPtr> out;
    for (const auto& [var, image] : inner.bindings()) {
        FormulaPtr mapped = outer.apply(image);
        if (!(mapped->is_variable() && mapped->name() == var))
            out.emplace(var, std::move(mapped));
    }
    for (const auto& [var, image] : outer.bindings())
        out.try_emplace(var, image);
    return Substitution(std::move(out));
}

namespace detail {

// Triangular working state for unification: images may mention other bound
// variables until the final resolution pass.
struct UnifyState {
    std::unordered_map<std::string, FormulaPtr> bindings;

    const FormulaPtr& walk(const FormulaPtr& t) const {
        const FormulaPtr* cur = &t;
        while ((*cur)->is_variable()) {
            auto it = bindings.find((*cur)->name());
            if (it == bindings.end()) break;
            cur = &it->second;
        }
        return *cur;
    }

    bool occurs(const std::string& var, const FormulaPtr& t) const {
        const FormulaPtr& w = walk(t);
        if (w->is_variable()) return w->name() == var;
        return occurs(var, w->lhs()) || occurs(var, w->rhs());
    }

    bool unify(const FormulaPtr& a, const FormulaPtr& b) {
        const FormulaPtr& x = walk(a);
        const FormulaPtr& y = walk(b);
        if (x->is_variable() && y->is_variable() && x->name() == y->name()) return true;
        if (x->is_variable()) {
            if (occurs(x->name(), y)) return false;
            FormulaPtr image = y;  // walk() returns a reference into the map
            bindings.emplace(x->name(), std::move(image));
            return true;
        }
        if (y->is_variable()) {
            if (occurs(y->name(), x)) return false;
            FormulaPtr image = x;
            bindings.emplace(y->name(), std::move(image));
            return true;
        }
        return unify(x->lhs(), y->lhs()) && unify(x->rhs(), y->rhs());
    }

    FormulaPtr resolve(const FormulaPtr& t,
                       std::unordered_map<const Formula*, FormulaPtr>& memo) const {
        const FormulaPtr& w = walk(t);
        if (w->is_variable()) return w;
        auto it = memo.find(w.get());
        if (it != memo.end()) return it->second;
        FormulaPtr lhs = resolve(w->lhs(), memo);
        FormulaPtr rhs = resolve(w->rhs(), memo);
        FormulaPtr out = (lhs.get() == w->lhs().get() && rhs.get() == w->rhs().get())
                             ? w
                             : Formula::equiv(std::move(lhs), std::move(rhs));
        memo.emplace(w.get(), out);
        return out;
    }
};

}  // namespace detail

// Most general unifier of f and g, or nullopt on a structural clash or
// occurs-check failure. The result is fully resolved and idempotent; every
// unifier of (f, g) factors through it. Shared variables are unified as-is;
// callers rename apart when disjointness is wanted.
inline std::optional<Substitution> most_general_unifier(const FormulaPtr& f,
                                                        const FormulaPtr& g) {
    detail::UnifyState state;
    if (!state.unify(f, g)) return std::nullopt;
    std::map<std::string, FormulaPtr> resolved;
    std::unordered_map<const Formula*, FormulaPtr> memo;
    for (const auto& [var, image] : state.bindings) {
        FormulaPtr full = state.resolve(image, memo);
        if (full->is_variable() && full->name() == var) continue;
        resolved.emplace(var, std::move(full));
    }
    return Substitution(std::move(resolved));
}

namespace detail {

inline std::pair<std::string, long> split_suffix(const std::string& name) {
    std::size_t i = 1;
    while (i < name.size() && is_digit(name[i])) ++i;
    std::string base = name.substr(0, 1);
    long suffix = (i > 1) ? std::stol(name.substr(1, i - 1)) : 0;
    return {base, suffix};
}

}  // namespace detail

// Alphabetical variant of f that shares no variable with `forbidden`.
// Clashing names get their numeric suffix bumped (p -> p1 -> p2, ...) in
// first-occurrence order, so the output is deterministic.
inline FormulaPtr rename_apart(const FormulaPtr& f,
                               const std::unordered_set<std::string>& forbidden) {
    std::vector<std::string> vars = variables(f);
    std::unordered_set<std::string> originals(vars.begin(), vars.end());
    std::unordered_set<std::string> assigned;
    std::map<std::string, std::string> renaming;
    for (const auto& var : vars) {
        if (!forbidden.count(var)) {
            renaming.emplace(var, var);
            assigned.insert(var);
            continue;
        }
        auto [base, suffix] = detail::split_suffix(var);
        for (long n = suffix + 1;; ++n) {
            std::string candidate = base + std::to_string(n);
            if (forbidden.count(candidate) || originals.count(candidate) ||
                assigned.count(candidate))
                continue;
            renaming.emplace(var, candidate);
            assigned.insert(candidate);
            break;
        }
    }
    auto walk = [&](auto&& self, const FormulaPtr& t) -> FormulaPtr {
        if (t->is_variable()) return Formula::variable(renaming.at(t->name()));
        return Formula::equiv(self(self, t->lhs()), self(self, t->rhs()));
    };
    return walk(walk, f);
}

}  // namespace eqc
