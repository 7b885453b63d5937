// Formula terms of the equivalential calculus: a single binary connective E
// over propositional variables, written in parenthesis-free Polish notation.
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqc {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable binary tree. A node is either a variable leaf or an E node with
// two children. Structural sharing between values is allowed and never
// observable. The symbol length (E nodes plus variable occurrences) is
// cached at construction.
class Formula {
public:
    static FormulaPtr variable(std::string name) {
        return std::shared_ptr<const Formula>(new Formula(std::move(name)));
    }
    static FormulaPtr equiv(FormulaPtr lhs, FormulaPtr rhs) {
        return std::shared_ptr<const Formula>(new Formula(std::move(lhs), std::move(rhs)));
    }

    bool is_variable() const { return !name_.empty(); }
    const std::string& name() const { return name_; }
    const FormulaPtr& lhs() const { return lhs_; }
    const FormulaPtr& rhs() const { return rhs_; }
    int symbol_length() const { return length_; }

private:
    explicit Formula(std::string name) : name_(std::move(name)), length_(1) {}
    Formula(FormulaPtr lhs, FormulaPtr rhs)
        : lhs_(std::move(lhs)), rhs_(std::move(rhs)),
          length_(1 + lhs_->symbol_length() + rhs_->symbol_length()) {}

    std::string name_;  // non-empty iff leaf
    FormulaPtr lhs_, rhs_;
    int length_;
};

inline int symbol_length(const FormulaPtr& f) { return f->symbol_length(); }

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->symbol_length() != b->symbol_length()) return false;
    if (a->is_variable() != b->is_variable()) return false;
    if (a->is_variable()) return a->name() == b->name();
    return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
}

struct ParseError : std::runtime_error {
    enum class Kind { UnexpectedEnd, TrailingInput, BadToken };
    ParseError(Kind k, std::size_t pos, const std::string& what)
        : std::runtime_error(what), kind(k), position(pos) {}
    Kind kind;
    std::size_t position;
};

namespace detail {

inline bool is_variable_start(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline FormulaPtr parse_term(std::string_view text, std::size_t& pos) {
    if (pos >= text.size())
        throw ParseError(ParseError::Kind::UnexpectedEnd, pos,
                         "input exhausted in the middle of a term");
    char c = text[pos];
    if (c == 'E') {
        ++pos;
        FormulaPtr lhs = parse_term(text, pos);
        FormulaPtr rhs = parse_term(text, pos);
        return Formula::equiv(std::move(lhs), std::move(rhs));
    }
    if (is_variable_start(c)) {
        std::size_t start = pos++;
        while (pos < text.size() && is_digit(text[pos])) ++pos;
        return Formula::variable(std::string(text.substr(start, pos - start)));
    }
    throw ParseError(ParseError::Kind::BadToken, pos,
                     std::string("unexpected character '") + c + "' at position " +
                         std::to_string(pos));
}

inline void print_into(const FormulaPtr& f, std::string& out) {
    if (f->is_variable()) {
        out += f->name();
        return;
    }
    out += 'E';
    print_into(f->lhs(), out);
    print_into(f->rhs(), out);
}

}  // namespace detail

// Deterministic Polish-notation parser: 'E' consumes two subterms, a variable
// is one lowercase letter followed by a maximal run of digits. The whole
// input must be consumed.
inline FormulaPtr parse_polish(std::string_view text) {
    std::size_t pos = 0;
    FormulaPtr f = detail::parse_term(text, pos);
    if (pos != text.size())
        throw ParseError(ParseError::Kind::TrailingInput, pos,
                         "trailing input after a complete term at position " +
                             std::to_string(pos));
    return f;
}

inline std::string print_polish(const FormulaPtr& f) {
    std::string out;
    out.reserve(static_cast<std::size_t>(f->symbol_length()) * 2);
    detail::print_into(f, out);
    return out;
}

// Distinct variables in order of first occurrence (pre-order).
inline void collect_variables(const FormulaPtr& f, std::vector<std::string>& out) {
    if (f->is_variable()) {
        for (const auto& v : out)
            if (v == f->name()) return;
        out.push_back(f->name());
        return;
    }
    collect_variables(f->lhs(), out);
    collect_variables(f->rhs(), out);
}

inline std::vector<std::string> variables(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_variables(f, out);
    return out;
}

// Exact multiset of variable occurrences.
inline std::map<std::string, int> occurrence_counts(const FormulaPtr& f) {
    std::map<std::string, int> counts;
    auto walk = [&](auto&& self, const FormulaPtr& t) -> void {
        if (t->is_variable()) {
            ++counts[t->name()];
            return;
        }
        self(self, t->lhs());
        self(self, t->rhs());
    };
    walk(walk, f);
    return counts;
}

// Canonical variable alphabet: a, b, ..., z, then v27, v28, ...
inline std::string canonical_name(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "v" + std::to_string(index + 1);
}

// A formula whose variables are renamed to the canonical alphabet by first
// occurrence in pre-order. Two formulas are alphabetical variants exactly
// when their canonical forms print identically; the printed text doubles as
// the identity key everywhere variants must be deduplicated.
class CanonicalFormula {
public:
    CanonicalFormula() = default;
    CanonicalFormula(FormulaPtr formula, std::string text)
        : formula_(std::move(formula)), text_(std::move(text)) {}

    const FormulaPtr& formula() const { return formula_; }
    const std::string& text() const { return text_; }
    int symbol_length() const { return formula_->symbol_length(); }
    bool empty() const { return formula_ == nullptr; }

    friend bool operator==(const CanonicalFormula& a, const CanonicalFormula& b) {
        return a.text_ == b.text_;
    }
    friend bool operator<(const CanonicalFormula& a, const CanonicalFormula& b) {
        return a.text_ < b.text_;
    }

private:
    FormulaPtr formula_;
    std::string text_;
};

inline CanonicalFormula canonical_form(const FormulaPtr& f) {
    std::map<std::string, std::string> renaming;
    auto walk = [&](auto&& self, const FormulaPtr& t) -> FormulaPtr {
        if (t->is_variable()) {
            auto it = renaming.find(t->name());
            if (it == renaming.end())
                it = renaming.emplace(t->name(), canonical_name(renaming.size())).first;
            return Formula::variable(it->second);
        }
        FormulaPtr lhs = self(self, t->lhs());
        FormulaPtr rhs = self(self, t->rhs());
        return Formula::equiv(std::move(lhs), std::move(rhs));
    };
    FormulaPtr canon = walk(walk, f);
    std::string text = print_polish(canon);
    return CanonicalFormula(std::move(canon), std::move(text));
}

inline bool are_variants(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->symbol_length() != b->symbol_length()) return false;
    return canonical_form(a).text() == canonical_form(b).text();
}

// Display-only folding: scan f pre-order and replace each maximal subformula
// that is an alphabetical variant of the pattern and whose variables occur
// nowhere else in f by successive letters A, B, C, ... The remainder prints
// in Polish notation. Folded text is never parsed back.
inline std::string print_folded(const FormulaPtr& f, const FormulaPtr& pattern) {
    const std::string pattern_text = canonical_form(pattern).text();
    const int pattern_length = pattern->symbol_length();
    const std::map<std::string, int> global = occurrence_counts(f);
    std::string out;
    int next_letter = 0;

    auto isolated = [&](const FormulaPtr& t) {
        for (const auto& [var, count] : occurrence_counts(t)) {
            auto it = global.find(var);
            if (it == global.end() || it->second != count) return false;
        }
        return true;
    };
    auto emit = [&](auto&& self, const FormulaPtr& t) -> void {
        if (!t->is_variable() && t->symbol_length() == pattern_length &&
            next_letter < 26 && canonical_form(t).text() == pattern_text &&
            isolated(t)) {
            out += static_cast<char>('A' + next_letter++);
            return;
        }
        if (t->is_variable()) {
            out += t->name();
            return;
        }
        out += 'E';
        self(self, t->lhs());
        self(self, t->rhs());
    };
    emit(emit, f);
    return out;
}

// EpEEEpqErqr, the length-eleven single axiom the toolkit revolves around;
// also the default folding pattern for reports.
inline const FormulaPtr& xcb() {
    static const FormulaPtr f = parse_polish("EpEEEpqErqr");
    return f;
}

}  // namespace eqc
