#include <catch2/catch_amalgamated.hpp>

#include "eqc/catalog.hpp"
#include "eqc/inference.hpp"
#include "eqc/semantics.hpp"
#include "test_support.hpp"

using namespace eqc;

TEST_CASE("self-detachment of the axiom", "[inference]") {
    auto out = condensed_detach(xcb(), xcb());
    REQUIRE(out);
    CHECK(out->result.text() == "EEEEaEEEabEcbcdEede");
    CHECK(out->result.symbol_length() == 19);
    CHECK(print_folded(out->result.formula(), xcb()) == "EEEAdEede");
    CHECK(out->major_instance_length == 31);
    CHECK(out->minor_instance_length == 11);

    // detaching the axiom from that reproduces the third proof line
    auto line3 = condensed_detach(out->result.formula(), xcb());
    REQUIRE(line3);
    CHECK(line3->result.text() == "EEEEaEEEabEcbcdeEde");
}

TEST_CASE("plain detachment with no substitution into the consequent", "[inference]") {
    auto out = condensed_detach(parse_polish("Epq"), parse_polish("p"));
    REQUIRE(out);
    CHECK(out->result.text() == "a");
    CHECK(out->major_instance_length == 3);
    CHECK(out->minor_instance_length == 1);
}

TEST_CASE("inapplicable detachments", "[inference]") {
    CHECK_FALSE(condensed_detach(parse_polish("p"), xcb()));
    CHECK_FALSE(reverse_condensed_detach(parse_polish("p"), xcb()));
    // occurs-check clash: E(p,p) against E(a,E(a,b))
    CHECK_FALSE(condensed_detach(parse_polish("EEppq"), parse_polish("EaEab")));
}

TEST_CASE("reverse detachment unifies the consequent", "[inference]") {
    auto out = reverse_condensed_detach(parse_polish("Epq"), parse_polish("q"));
    REQUIRE(out);
    CHECK(out->result.text() == "a");

    out = reverse_condensed_detach(parse_polish("EEpqEqp"), parse_polish("Eab"));
    REQUIRE(out);
    CHECK(out->result.text() == "Eab");
}

TEST_CASE("results are invariant under renaming of either input", "[inference]") {
    std::mt19937 rng(617);
    const std::vector<std::string> pool = {"p", "q", "r", "s"};
    int applicable = 0;
    for (int i = 0; i < 300; ++i) {
        FormulaPtr major = testing::random_formula(rng, 13, pool);
        FormulaPtr minor = testing::random_formula(rng, 13, pool);
        auto base_d = condensed_detach(major, minor);
        auto base_r = reverse_condensed_detach(major, minor);
        FormulaPtr major2 = testing::random_variant(rng, major);
        FormulaPtr minor2 = testing::random_variant(rng, minor);
        auto var_d = condensed_detach(major2, minor2);
        auto var_r = reverse_condensed_detach(major2, minor2);
        REQUIRE(base_d.has_value() == var_d.has_value());
        REQUIRE(base_r.has_value() == var_r.has_value());
        if (base_d) {
            ++applicable;
            CHECK(base_d->result.text() == var_d->result.text());
            CHECK(base_d->major_instance_length == var_d->major_instance_length);
            CHECK(base_d->minor_instance_length == var_d->minor_instance_length);
        }
        if (base_r) CHECK(base_r->result.text() == var_r->result.text());
    }
    CHECK(applicable > 100);
}

TEST_CASE("identical inputs give identical outcomes", "[inference]") {
    auto a = condensed_detach(xcb(), parse_polish("Epp"));
    auto b = condensed_detach(xcb(), parse_polish("Epp"));
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->result.text() == b->result.text());
    CHECK(a->major_instance_length == b->major_instance_length);
    CHECK(a->minor_instance_length == b->minor_instance_length);
}

TEST_CASE("both rules preserve tautologyhood across the catalog", "[inference]") {
    std::vector<FormulaPtr> theses;
    for (int length : {3, 7, 11})
        for (const auto& member : enumerate_theses(length).members)
            theses.push_back(member.formula());
    REQUIRE(theses.size() == 1 + 15 + 630);
    long applied = 0;
    for (const auto& major : theses) {
        for (const auto& minor : theses) {
            if (auto d = condensed_detach(major, minor)) {
                ++applied;
                if (!is_tautology(d->result.formula()))
                    FAIL("D broke soundness on " << print_polish(major) << " / "
                                                 << print_polish(minor));
            }
            if (auto r = reverse_condensed_detach(major, minor)) {
                if (!is_tautology(r->result.formula()))
                    FAIL("R broke soundness on " << print_polish(major) << " / "
                                                 << print_polish(minor));
            }
        }
    }
    CHECK(applied > 100000);
}

TEST_CASE("instance lengths bound the premiss lengths", "[inference]") {
    std::mt19937 rng(1001);
    const std::vector<std::string> pool = {"p", "q", "r"};
    for (int i = 0; i < 400; ++i) {
        FormulaPtr major = testing::random_formula(rng, 13, pool);
        FormulaPtr minor = testing::random_formula(rng, 13, pool);
        auto out = condensed_detach(major, minor);
        if (!out) continue;
        CHECK(out->major_instance_length >= symbol_length(major));
        CHECK(out->minor_instance_length >= symbol_length(minor));

        // equality exactly when the unifier keeps the major's variables as
        // variables (the substitution restricted to them is a renaming)
        std::unordered_set<std::string> forbidden;
        for (const auto& v : variables(major)) forbidden.insert(v);
        auto sigma = most_general_unifier(major->lhs(), rename_apart(minor, forbidden));
        REQUIRE(sigma);
        bool renaming = true;
        for (const auto& v : variables(major))
            if (const FormulaPtr* image = sigma->lookup(v))
                if (!(*image)->is_variable()) renaming = false;
        CHECK((out->major_instance_length == symbol_length(major)) == renaming);
    }
}

TEST_CASE("self-detachment chains", "[inference]") {
    ChainResult chain = self_detach_chain(xcb(), 2);
    REQUIRE_FALSE(chain.failed_step);
    REQUIRE(chain.lines.size() == 2);
    CHECK(chain.lines[0].text() == "EEEEaEEEabEcbcdEede");
    CHECK(chain.lines[1].text() == "EEEEaEEEabEcbcdeEde");

    chain = self_detach_chain(parse_polish("Epp"), 1);
    REQUIRE_FALSE(chain.failed_step);
    REQUIRE(chain.lines.size() == 1);
    CHECK(chain.lines[0].text() == "Eaa");

    chain = self_detach_chain(parse_polish("p"), 1);
    REQUIRE(chain.failed_step);
    CHECK(*chain.failed_step == 1);
    CHECK(chain.lines.empty());
}
