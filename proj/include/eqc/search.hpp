// Bounded forward-chaining saturation under D (optionally D+R) with
// variant-based deduplication, goal detection, hints, and trace extraction.
#pragma once

#include <queue>

#include "eqc/proofs.hpp"

namespace eqc {

struct SearchLimits {
    int max_symbol_length = 23;
    int max_kept = 20000;
    int max_steps = 2000;
    bool enable_reverse = false;           // {D} or {D, R}
    std::vector<FormulaPtr> hints;         // kept regardless of the length cap
};

enum class SearchStatus { AllGoalsReached, LimitReached };

struct KBEntry {
    CanonicalFormula formula;
    StepRule rule = StepRule::Axiom;
    int major_id = -1;  // indices into the knowledge base, -1 for axioms
    int minor_id = -1;
};

struct KnowledgeBase {
    std::vector<KBEntry> entries;
};

struct SearchStats {
    long generated = 0;
    long kept = 0;
    long discarded_by_length = 0;
    long discarded_as_variant = 0;
    int steps_run = 0;  // given-clause rounds
};

struct GoalResult {
    CanonicalFormula goal;
    bool found = false;
    int entry_id = -1;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::LimitReached;
    KnowledgeBase kb;
    SearchStats stats;
    std::vector<GoalResult> goals;

    // true once every goal is present; with no goals the search just runs
    // to its limits, so this stays false
    bool all_goals_found() const {
        if (goals.empty()) return false;
        for (const auto& g : goals)
            if (!g.found) return false;
        return true;
    }
};

// Given-clause loop. The frontier entry minimal under (symbol length,
// insertion order) is combined as major and as minor with every kept entry
// under each enabled rule; results are canonicalized, deduplicated against
// kept variants, and capped by length unless they are variants of a hint.
// Each round's survivors are sorted by (length, canonical text) before id
// assignment, so identical inputs always produce identical knowledge bases.
inline SearchOutcome saturate(const std::vector<FormulaPtr>& axioms,
                              const SearchLimits& limits,
                              const std::vector<FormulaPtr>& goals) {
    SearchOutcome outcome;
    std::unordered_map<std::string, int> index;
    std::unordered_set<std::string> hint_texts;
    for (const auto& h : limits.hints) hint_texts.insert(canonical_form(h).text());
    for (const auto& g : goals) outcome.goals.push_back({canonical_form(g), false, -1});

    using FrontierItem = std::pair<int, int>;  // (symbol length, entry id)
    std::priority_queue<FrontierItem, std::vector<FrontierItem>, std::greater<>> frontier;

    auto insert = [&](CanonicalFormula formula, StepRule rule, int major, int minor) {
        const std::string& text = formula.text();
        if (index.count(text)) return;
        int id = static_cast<int>(outcome.kb.entries.size());
        index.emplace(text, id);
        frontier.emplace(formula.symbol_length(), id);
        for (auto& goal : outcome.goals)
            if (!goal.found && goal.goal.text() == text) {
                goal.found = true;
                goal.entry_id = id;
            }
        outcome.kb.entries.push_back({std::move(formula), rule, major, minor});
        ++outcome.stats.kept;
    };

    for (const auto& axiom : axioms)
        insert(canonical_form(axiom), StepRule::Axiom, -1, -1);

    struct Candidate {
        CanonicalFormula formula;
        StepRule rule;
        int major_id;
        int minor_id;
    };

    while (!frontier.empty() && !outcome.all_goals_found() &&
           outcome.stats.steps_run < limits.max_steps &&
           static_cast<int>(outcome.kb.entries.size()) < limits.max_kept) {
        auto [given_length, given_id] = frontier.top();
        frontier.pop();
        ++outcome.stats.steps_run;

        const int snapshot = static_cast<int>(outcome.kb.entries.size());
        std::vector<Candidate> round;
        std::unordered_set<std::string> round_texts;
        auto offer = [&](const std::optional<DetachmentOutcome>& out, StepRule rule,
                         int major_id, int minor_id) {
            if (!out) return;
            ++outcome.stats.generated;
            const std::string& text = out->result.text();
            if (index.count(text)) {
                ++outcome.stats.discarded_as_variant;
                return;
            }
            if (out->result.symbol_length() > limits.max_symbol_length &&
                !hint_texts.count(text)) {
                ++outcome.stats.discarded_by_length;
                return;
            }
            if (!round_texts.insert(text).second) return;
            round.push_back({out->result, rule, major_id, minor_id});
        };

        const FormulaPtr given = outcome.kb.entries[given_id].formula.formula();
        for (int other_id = 0; other_id < snapshot; ++other_id) {
            const FormulaPtr other = outcome.kb.entries[other_id].formula.formula();
            offer(condensed_detach(given, other), StepRule::Detach, given_id, other_id);
            if (other_id != given_id)
                offer(condensed_detach(other, given), StepRule::Detach, other_id, given_id);
            if (limits.enable_reverse) {
                offer(reverse_condensed_detach(given, other), StepRule::ReverseDetach,
                      given_id, other_id);
                if (other_id != given_id)
                    offer(reverse_condensed_detach(other, given), StepRule::ReverseDetach,
                          other_id, given_id);
            }
        }

        std::sort(round.begin(), round.end(), [](const Candidate& a, const Candidate& b) {
            if (a.formula.symbol_length() != b.formula.symbol_length())
                return a.formula.symbol_length() < b.formula.symbol_length();
            return a.formula.text() < b.formula.text();
        });
        for (auto& candidate : round) {
            if (static_cast<int>(outcome.kb.entries.size()) >= limits.max_kept) break;
            insert(std::move(candidate.formula), candidate.rule, candidate.major_id,
                   candidate.minor_id);
            if (outcome.all_goals_found()) break;
        }
    }

    outcome.status = outcome.all_goals_found() ? SearchStatus::AllGoalsReached
                                               : SearchStatus::LimitReached;
    return outcome;
}

struct NotDerived : std::runtime_error {
    explicit NotDerived(const std::string& text)
        : std::runtime_error("no variant of " + text + " in the knowledge base") {}
};

// Minimal trace for a derived formula: ancestors only, renumbered from 1,
// axioms first. The trace replays to a variant of the target.
inline ProofTrace extract_trace(const KnowledgeBase& kb, const FormulaPtr& target) {
    const CanonicalFormula wanted = canonical_form(target);
    int target_id = -1;
    for (std::size_t i = 0; i < kb.entries.size(); ++i)
        if (kb.entries[i].formula.text() == wanted.text()) {
            target_id = static_cast<int>(i);
            break;
        }
    if (target_id < 0) throw NotDerived(wanted.text());

    std::set<int> needed;
    std::vector<int> stack{target_id};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (!needed.insert(id).second) continue;
        const KBEntry& entry = kb.entries[id];
        if (entry.rule != StepRule::Axiom) {
            stack.push_back(entry.major_id);
            stack.push_back(entry.minor_id);
        }
    }

    ProofTrace trace;
    std::map<int, int> remap;  // ancestors ascend, so parents come first
    for (int id : needed) {
        const KBEntry& entry = kb.entries[id];
        ProofStep step;
        step.id = static_cast<int>(remap.size()) + 1;
        remap.emplace(id, step.id);
        step.rule = entry.rule;
        if (entry.rule == StepRule::Axiom) {
            step.axiom = entry.formula.formula();
        } else {
            step.major_id = remap.at(entry.major_id);
            step.minor_id = remap.at(entry.minor_id);
        }
        trace.steps.push_back(std::move(step));
    }
    trace.expect_formulas[static_cast<int>(trace.steps.size())] = wanted.formula();
    return trace;
}

enum class CandidateStatus { Confirmed, Inconclusive };

// Outcome of a bounded single-axiom check. A bounded run can confirm (both
// basis goals derived, traces extracted) but never refute; everything else
// is reported as inconclusive.
struct CandidateReport {
    CandidateStatus status = CandidateStatus::Inconclusive;
    SearchOutcome outcome;
    std::vector<ProofTrace> goal_traces;  // one per goal when confirmed
};

inline const std::vector<FormulaPtr>& basis_goals() {
    static const std::vector<FormulaPtr> goals = {parse_polish("EEpqEEqrEpr"),
                                                  parse_polish("EEpqEqp")};
    return goals;
}

inline CandidateReport check_single_axiom_candidate(const FormulaPtr& candidate,
                                                    const SearchLimits& limits) {
    CandidateReport report;
    report.outcome = saturate({candidate}, limits, basis_goals());
    if (report.outcome.status == SearchStatus::AllGoalsReached) {
        report.status = CandidateStatus::Confirmed;
        for (const auto& goal : report.outcome.goals)
            report.goal_traces.push_back(
                extract_trace(report.outcome.kb, goal.goal.formula()));
    }
    return report;
}

}  // namespace eqc
