// The census of shortest-axiom candidates: for each odd length, every thesis
// (up to alphabetical variance) in which each variable occurs exactly twice.
// This is the register the eleven-symbol count of 630 lives in, and it hosts
// the fourteen known shortest single axioms.
#pragma once

#include <functional>
#include <mutex>
#include <set>

#include "eqc/formula.hpp"
#include "eqc/semantics.hpp"

namespace eqc {

struct InvalidLength : std::invalid_argument {
    explicit InvalidLength(int length)
        : std::invalid_argument("no well-formed formula has symbol length " +
                                std::to_string(length)) {}
};

struct ThesisSet {
    int length = 0;
    std::vector<CanonicalFormula> members;  // sorted by canonical text
    long shape_count = 0;                   // binary tree shapes visited
    long partitions_per_shape = 0;          // leaf partitions visited per shape
};

namespace detail {

// All binary tree shapes with the given number of leaves; leaves are
// placeholders relabeled later.
inline std::vector<FormulaPtr> tree_shapes(int leaves) {
    if (leaves == 1) return {Formula::variable("x")};
    std::vector<FormulaPtr> out;
    for (int k = 1; k < leaves; ++k) {
        std::vector<FormulaPtr> left = tree_shapes(k);
        std::vector<FormulaPtr> right = tree_shapes(leaves - k);
        for (const auto& l : left)
            for (const auto& r : right) out.push_back(Formula::equiv(l, r));
    }
    return out;
}

inline FormulaPtr relabel_leaves(const FormulaPtr& shape, const std::vector<int>& blocks,
                                 std::size_t& next) {
    if (shape->is_variable())
        return Formula::variable(canonical_name(blocks[next++]));
    FormulaPtr lhs = relabel_leaves(shape->lhs(), blocks, next);
    FormulaPtr rhs = relabel_leaves(shape->rhs(), blocks, next);
    return Formula::equiv(std::move(lhs), std::move(rhs));
}

// Restricted growth strings: every set partition of the leaf positions
// exactly once, with blocks numbered by first occurrence. Relabeling leaves
// with them yields each variable-identification pattern once, already in
// canonical naming.
inline void for_each_partition(int leaves, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> blocks(leaves, 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == leaves) {
            fn(blocks);
            return;
        }
        for (int v = 0; v <= max_used + 1; ++v) {
            blocks[i] = v;
            self(self, i + 1, std::max(max_used, v));
        }
    };
    if (leaves > 0) rec(rec, 1, 0);  // first leaf is always block 0
}

}  // namespace detail

// Enumerate the census at the given symbol length: every tree shape times
// every leaf partition, kept when the labeled formula is a tautology with
// each variable occurring exactly twice. Distinct (shape, partition) pairs
// are never variants of one another, so the result needs no dedup pass.
inline ThesisSet enumerate_theses(int length) {
    if (length <= 0 || length % 2 == 0) throw InvalidLength(length);
    const int leaves = (length + 1) / 2;
    ThesisSet out;
    out.length = length;
    std::set<CanonicalFormula> members;
    std::vector<FormulaPtr> shapes = detail::tree_shapes(leaves);
    out.shape_count = static_cast<long>(shapes.size());
    for (const auto& shape : shapes) {
        long partitions = 0;
        detail::for_each_partition(leaves, [&](const std::vector<int>& blocks) {
            ++partitions;
            std::vector<int> block_sizes;
            for (int b : blocks) {
                if (b >= static_cast<int>(block_sizes.size()))
                    block_sizes.resize(b + 1, 0);
                ++block_sizes[b];
            }
            for (int size : block_sizes)
                if (size != 2) return;
            std::size_t next = 0;
            FormulaPtr f = detail::relabel_leaves(shape, blocks, next);
            if (!is_tautology(f)) return;
            members.insert(canonical_form(f));
        });
        out.partitions_per_shape = partitions;
    }
    out.members.assign(members.begin(), members.end());
    return out;
}

struct AxiomEntry {
    std::string source;
    FormulaPtr formula;
};

struct AxiomRegistry {
    std::vector<AxiomEntry> entries;
};

// The fourteen shortest single axioms: Lukasiewicz's three, Meredith's
// seven, Kalman's one, Winker's two, and XCB.
inline AxiomRegistry known_axioms() {
    static const std::pair<const char*, const char*> listed[] = {
        {"lukasiewicz-1", "EEpqEErqEpr"},
        {"lukasiewicz-2", "EEpqEEprErq"},
        {"lukasiewicz-3", "EEpqEErpEqr"},
        {"meredith-1", "EEEpqrEqErp"},
        {"meredith-2", "EpEEqEprErq"},
        {"meredith-3", "EEpEqrErEpq"},
        {"meredith-4", "EEpqErEEqrp"},
        {"meredith-5", "EEpqErEErqp"},
        {"meredith-6", "EEEpEqrrEqp"},
        {"meredith-7", "EEEpEqrqErp"},
        {"kalman", "EpEEqErpErq"},
        {"winker-1", "EpEEqrEEprq"},
        {"winker-2", "EpEEqrEErpq"},
        {"xcb", "EpEEEpqErqr"},
    };
    AxiomRegistry registry;
    for (const auto& [source, text] : listed)
        registry.entries.push_back({source, parse_polish(text)});
    return registry;
}

struct MembershipResult {
    bool member = false;
    CanonicalFormula canonical;
};

// Membership of f's canonical form in the census at f's length, with the
// per-length sets computed on demand and cached.
inline MembershipResult thesis_membership(const FormulaPtr& f) {
    static std::map<int, std::set<std::string>> cache;
    static std::mutex mutex;
    MembershipResult out;
    out.canonical = canonical_form(f);
    const int length = f->symbol_length();
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(length);
    if (it == cache.end()) {
        std::set<std::string> texts;
        for (const auto& member : enumerate_theses(length).members)
            texts.insert(member.text());
        it = cache.emplace(length, std::move(texts)).first;
    }
    out.member = it->second.count(out.canonical.text()) > 0;
    return out;
}

}  // namespace eqc
