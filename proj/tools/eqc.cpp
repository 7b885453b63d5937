// Command-line front end: parsing, semantics, the two inference rules,
// trace replay, census enumeration, the axiom registry, and bounded search.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqc/catalog.hpp"
#include "eqc/search.hpp"

using nlohmann::json;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;

eqc::FormulaPtr parse_arg(const std::string& text) {
    try {
        return eqc::parse_polish(text);
    } catch (const eqc::ParseError& e) {
        std::cerr << "error: cannot parse formula '" << text << "': " << e.what()
                  << "\n";
        std::exit(kExitUsage);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        std::exit(kExitUsage);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<eqc::FormulaPtr> read_formula_file(const std::string& path) {
    std::vector<eqc::FormulaPtr> out;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        out.push_back(parse_arg(line.substr(start, end - start + 1)));
    }
    return out;
}

json record_to_json(const eqc::ReplayRecord& r) {
    json j;
    j["id"] = r.id;
    j["rule"] = eqc::rule_name(r.rule);
    if (r.rule != eqc::StepRule::Axiom) {
        j["major"] = r.major_id;
        j["minor"] = r.minor_id;
        j["major_instance_length"] = r.major_instance_length;
        j["minor_instance_length"] = r.minor_instance_length;
    }
    j["formula"] = r.formula.text();
    j["folded"] = r.folded;
    j["length"] = r.symbol_length;
    j["tautology"] = r.tautology;
    j["expectation"] = r.has_expectation ? "ok" : "-";
    return j;
}

json stats_to_json(const eqc::SearchOutcome& outcome) {
    json j;
    j["status"] = outcome.status == eqc::SearchStatus::AllGoalsReached
                      ? "AllGoalsReached"
                      : "LimitReached";
    j["generated"] = outcome.stats.generated;
    j["kept"] = outcome.stats.kept;
    j["discarded_by_length"] = outcome.stats.discarded_by_length;
    j["discarded_as_variant"] = outcome.stats.discarded_as_variant;
    j["steps"] = outcome.stats.steps_run;
    j["goals"] = json::array();
    for (const auto& goal : outcome.goals)
        j["goals"].push_back({{"formula", goal.goal.text()}, {"found", goal.found}});
    return j;
}

void print_stats(const eqc::SearchOutcome& outcome) {
    std::cout << "status\t"
              << (outcome.status == eqc::SearchStatus::AllGoalsReached
                      ? "AllGoalsReached"
                      : "LimitReached")
              << "\n";
    std::cout << "generated\t" << outcome.stats.generated << "\n";
    std::cout << "kept\t" << outcome.stats.kept << "\n";
    std::cout << "discarded-by-length\t" << outcome.stats.discarded_by_length << "\n";
    std::cout << "discarded-as-variant\t" << outcome.stats.discarded_as_variant << "\n";
    std::cout << "steps\t" << outcome.stats.steps_run << "\n";
    for (const auto& goal : outcome.goals)
        std::cout << "goal\t" << goal.goal.text() << "\t"
                  << (goal.found ? "found" : "not-found") << "\n";
}

struct LimitOptions {
    int max_length = 23;
    int max_steps = 2000;
    int max_kept = 20000;
    std::string rules = "d";
    std::string hints_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-length", max_length, "discard results longer than this");
        cmd->add_option("--max-steps", max_steps, "given-clause round limit");
        cmd->add_option("--max-kept", max_kept, "knowledge-base size limit");
        cmd->add_option("--rules", rules, "inference rules: d or dr")
            ->check(CLI::IsMember({"d", "dr"}));
        cmd->add_option("--hints", hints_file,
                        "file of formulas kept regardless of the length cap");
    }

    eqc::SearchLimits to_limits() const {
        eqc::SearchLimits limits;
        limits.max_symbol_length = max_length;
        limits.max_steps = max_steps;
        limits.max_kept = max_kept;
        limits.enable_reverse = rules == "dr";
        if (!hints_file.empty()) limits.hints = read_formula_file(hints_file);
        return limits;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eqc - proof engine for the classical equivalential calculus"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "emit structured JSON instead of text");

    std::string formula_arg, major_arg, minor_arg, trace_file, candidate_arg;
    bool paper = false, count_only = false, show_traces = false;
    int enum_length = 0;
    std::vector<std::string> axiom_args, goal_args;
    LimitOptions search_limits, check_limits;

    auto* cmd_parse = app.add_subcommand("parse", "parse a formula; echo canonical and folded forms");
    cmd_parse->add_option("formula", formula_arg)->required();

    auto* cmd_taut = app.add_subcommand("taut", "decide two-valued tautologyhood");
    cmd_taut->add_option("formula", formula_arg)->required();

    auto* cmd_d = app.add_subcommand("d", "condensed detachment of minor from major");
    cmd_d->add_option("major", major_arg)->required();
    cmd_d->add_option("minor", minor_arg)->required();

    auto* cmd_r = app.add_subcommand("r", "reverse condensed detachment");
    cmd_r->add_option("major", major_arg)->required();
    cmd_r->add_option("minor", minor_arg)->required();

    auto* cmd_replay = app.add_subcommand("replay", "replay and verify a proof trace");
    cmd_replay->add_option("trace-file", trace_file, "trace file to replay");
    cmd_replay->add_flag("--paper", paper, "replay the embedded 26-line derivation");

    auto* cmd_enum = app.add_subcommand("enumerate", "dump the thesis census at a length");
    cmd_enum->add_option("--length", enum_length)->required();
    cmd_enum->add_flag("--count-only", count_only, "print only the member count");

    app.add_subcommand("axioms", "print the registry of shortest single axioms");

    auto* cmd_search = app.add_subcommand("search", "bounded saturation from axioms");
    cmd_search->add_option("--axiom", axiom_args, "axiom formulas")->required();
    cmd_search->add_option("--goal", goal_args, "goal formulas");
    search_limits.attach(cmd_search);

    auto* cmd_check = app.add_subcommand("check-axiom",
                                         "bounded single-axiom candidate check");
    cmd_check->add_option("formula", candidate_arg)->required();
    cmd_check->add_flag("--show-traces", show_traces,
                        "print extracted basis traces when confirmed");
    check_limits.attach(cmd_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_parse->parsed()) {
            eqc::FormulaPtr f = parse_arg(formula_arg);
            eqc::CanonicalFormula canon = eqc::canonical_form(f);
            std::string folded = eqc::print_folded(f, eqc::xcb());
            if (json_out)
                std::cout << json{{"canonical", canon.text()},
                                  {"folded", folded},
                                  {"length", f->symbol_length()}}
                          << "\n";
            else
                std::cout << canon.text() << "\t" << folded << "\t"
                          << f->symbol_length() << "\n";
            return kExitSuccess;
        }

        if (cmd_taut->parsed()) {
            bool taut = eqc::is_tautology(parse_arg(formula_arg));
            if (json_out)
                std::cout << json{{"tautology", taut}} << "\n";
            else
                std::cout << (taut ? "true" : "false") << "\n";
            return taut ? kExitSuccess : kExitDomainFailure;
        }

        if (cmd_d->parsed() || cmd_r->parsed()) {
            eqc::FormulaPtr major = parse_arg(major_arg);
            eqc::FormulaPtr minor = parse_arg(minor_arg);
            std::optional<eqc::DetachmentOutcome> out =
                cmd_d->parsed() ? eqc::condensed_detach(major, minor)
                                : eqc::reverse_condensed_detach(major, minor);
            if (!out) {
                std::cerr << "inapplicable: "
                          << (cmd_d->parsed() ? "condensed" : "reverse condensed")
                          << " detachment does not exist for these premisses\n";
                return kExitDomainFailure;
            }
            std::string folded = eqc::print_folded(out->result.formula(), eqc::xcb());
            if (json_out)
                std::cout << json{{"result", out->result.text()},
                                  {"folded", folded},
                                  {"length", out->result.symbol_length()},
                                  {"major_instance_length", out->major_instance_length},
                                  {"minor_instance_length", out->minor_instance_length}}
                          << "\n";
            else
                std::cout << out->result.text() << "\t" << folded << "\t"
                          << out->result.symbol_length() << "\t"
                          << out->major_instance_length << "\t"
                          << out->minor_instance_length << "\n";
            return kExitSuccess;
        }

        if (cmd_replay->parsed()) {
            if (paper == !trace_file.empty()) {
                std::cerr << "error: replay needs a trace file or --paper\n";
                return kExitUsage;
            }
            eqc::ProofTrace trace;
            if (paper) {
                trace = eqc::paper_fixture();
            } else {
                try {
                    trace = eqc::parse_trace(read_file(trace_file));
                } catch (const eqc::TraceParseError& e) {
                    std::cerr << "error: " << trace_file << ": " << e.what() << "\n";
                    return kExitUsage;
                }
            }
            eqc::ReplayReport report;
            try {
                report = eqc::replay(trace);
            } catch (const eqc::ReplayError& e) {
                std::cerr << "replay failed: " << e.what() << "\n";
                return kExitDomainFailure;
            }
            if (json_out) {
                json j = json::array();
                for (const auto& r : report.records) j.push_back(record_to_json(r));
                std::cout << j << "\n";
            } else {
                std::cout << eqc::to_tsv(report);
            }
            return kExitSuccess;
        }

        if (cmd_enum->parsed()) {
            eqc::ThesisSet set;
            try {
                set = eqc::enumerate_theses(enum_length);
            } catch (const eqc::InvalidLength& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            if (json_out) {
                json j;
                j["length"] = set.length;
                j["count"] = set.members.size();
                j["tree_shapes"] = set.shape_count;
                j["leaf_partitions_per_shape"] = set.partitions_per_shape;
                if (!count_only) {
                    j["members"] = json::array();
                    for (const auto& m : set.members) j["members"].push_back(m.text());
                }
                std::cout << j << "\n";
            } else if (count_only) {
                std::cout << set.members.size() << "\n";
            } else {
                for (const auto& m : set.members) std::cout << m.text() << "\n";
            }
            return kExitSuccess;
        }

        if (app.get_subcommand("axioms")->parsed()) {
            eqc::AxiomRegistry registry = eqc::known_axioms();
            if (json_out) {
                json j = json::array();
                for (const auto& entry : registry.entries)
                    j.push_back({{"source", entry.source},
                                 {"formula", eqc::print_polish(entry.formula)},
                                 {"canonical", eqc::canonical_form(entry.formula).text()}});
                std::cout << j << "\n";
            } else {
                for (const auto& entry : registry.entries)
                    std::cout << entry.source << "\t" << eqc::print_polish(entry.formula)
                              << "\t" << eqc::canonical_form(entry.formula).text()
                              << "\n";
            }
            return kExitSuccess;
        }

        if (cmd_search->parsed()) {
            std::vector<eqc::FormulaPtr> axioms, goals;
            for (const auto& a : axiom_args) axioms.push_back(parse_arg(a));
            for (const auto& g : goal_args) goals.push_back(parse_arg(g));
            eqc::SearchOutcome outcome =
                eqc::saturate(axioms, search_limits.to_limits(), goals);
            if (json_out)
                std::cout << stats_to_json(outcome) << "\n";
            else
                print_stats(outcome);
            if (goal_args.empty()) return kExitSuccess;  // closure run, nothing to miss
            return outcome.status == eqc::SearchStatus::AllGoalsReached
                       ? kExitSuccess
                       : kExitDomainFailure;
        }

        if (cmd_check->parsed()) {
            eqc::CandidateReport report = eqc::check_single_axiom_candidate(
                parse_arg(candidate_arg), check_limits.to_limits());
            bool confirmed = report.status == eqc::CandidateStatus::Confirmed;
            if (json_out) {
                json j;
                j["candidate"] = candidate_arg;
                j["status"] = confirmed ? "confirmed" : "inconclusive";
                j["search"] = stats_to_json(report.outcome);
                if (show_traces) {
                    j["traces"] = json::array();
                    for (const auto& trace : report.goal_traces)
                        j["traces"].push_back(eqc::format_trace(trace));
                }
                std::cout << j << "\n";
            } else {
                std::cout << "status\t" << (confirmed ? "confirmed" : "inconclusive")
                          << "\n";
                print_stats(report.outcome);
                if (show_traces)
                    for (const auto& trace : report.goal_traces)
                        std::cout << "trace\n" << eqc::format_trace(trace);
            }
            return confirmed ? kExitSuccess : kExitDomainFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
