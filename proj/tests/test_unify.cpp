#include <catch2/catch_amalgamated.hpp>

#include "eqc/unify.hpp"
#include "test_support.hpp"

using namespace eqc;

namespace {

Substitution sub(std::initializer_list<std::pair<const char*, const char*>> pairs) {
    std::map<std::string, FormulaPtr> bindings;
    for (const auto& [var, image] : pairs) bindings.emplace(var, parse_polish(image));
    return Substitution(std::move(bindings));
}

}  // namespace

TEST_CASE("apply replaces simultaneously", "[unify]") {
    CHECK(print_polish(sub({{"p", "Eab"}}).apply(parse_polish("EpEqp"))) ==
          "EEabEqEab");
    FormulaPtr f = parse_polish("EEpqErr");
    CHECK(equal(Substitution().apply(f), f));
    CHECK(print_polish(sub({{"p", "q"}, {"q", "p"}}).apply(parse_polish("Epq"))) ==
          "Eqp");
}

TEST_CASE("compose satisfies its defining law", "[unify]") {
    Substitution s = sub({{"p", "Eqq"}});
    CHECK(compose(Substitution(), s).bindings().size() == 1);
    CHECK(print_polish(compose(Substitution(), s).apply(parse_polish("p"))) == "Eqq");
    CHECK(print_polish(compose(sub({{"q", "r"}}), s).apply(parse_polish("p"))) == "Err");
    CHECK(compose(s, Substitution()).bindings().size() == 1);

    std::mt19937 rng(321);
    const std::vector<std::string> pool = {"p", "q", "r"};
    for (int i = 0; i < 200; ++i) {
        std::map<std::string, FormulaPtr> a, b;
        a.emplace(pool[i % 3], testing::random_formula(rng, 7, pool));
        b.emplace(pool[(i + 1) % 3], testing::random_formula(rng, 7, pool));
        Substitution outer{std::move(a)}, inner{std::move(b)};
        FormulaPtr f = testing::random_formula(rng, 11, pool);
        CHECK(equal(compose(outer, inner).apply(f), outer.apply(inner.apply(f))));
    }
}

TEST_CASE("rename_apart avoids the forbidden set deterministically", "[unify]") {
    FormulaPtr renamed = rename_apart(parse_polish("Epq"), {"p"});
    CHECK(print_polish(renamed) == "Ep1q");

    FormulaPtr same = rename_apart(parse_polish("Epq"), {});
    CHECK(print_polish(same) == "Epq");

    std::unordered_set<std::string> xcb_vars = {"p", "q", "r"};
    FormulaPtr fresh = rename_apart(xcb(), xcb_vars);
    for (const auto& v : variables(fresh)) CHECK_FALSE(xcb_vars.count(v));
    CHECK(canonical_form(fresh).text() == canonical_form(xcb()).text());
}

TEST_CASE("rename_apart bumps numeric suffixes past collisions", "[unify]") {
    // p is forbidden, p1 already occurs: p goes to p2
    FormulaPtr renamed = rename_apart(parse_polish("Epp1"), {"p"});
    CHECK(print_polish(renamed) == "Ep2p1");
    renamed = rename_apart(parse_polish("Ep3q"), {"p3", "p4"});
    CHECK(print_polish(renamed) == "Ep5q");
}

TEST_CASE("most general unifier on the worked examples", "[unify]") {
    FormulaPtr f = parse_polish("Epq");
    FormulaPtr g = parse_polish("EEabb");
    auto sigma = most_general_unifier(f, g);
    REQUIRE(sigma);
    CHECK(print_polish(*sigma->lookup("p")) == "Eab");
    CHECK(print_polish(*sigma->lookup("q")) == "b");
    CHECK(equal(sigma->apply(f), sigma->apply(g)));

    CHECK_FALSE(most_general_unifier(parse_polish("p"), parse_polish("Epq")));

    // shared variables unify as genuinely shared: here the q of EqErr would
    // have to swallow E(p,q), so the occurs check refuses
    f = parse_polish("EEpqp");
    g = parse_polish("EqErr");
    CHECK_FALSE(most_general_unifier(f, g));

    // renamed apart (as detachment does) the pair unifies: the fresh q
    // takes the antecedent pair and p takes Err
    g = rename_apart(g, {"p", "q"});
    sigma = most_general_unifier(f, g);
    REQUIRE(sigma);
    CHECK(print_polish(*sigma->lookup("p")) == "Err");
    CHECK(print_polish(*sigma->lookup("q1")) == "EErrq");
    CHECK(equal(sigma->apply(f), sigma->apply(g)));
    for (const auto& [var, image] : sigma->bindings())  // idempotent: resolved images
        CHECK(equal(sigma->apply(image), image));
}

TEST_CASE("unifier laws on random pairs", "[unify]") {
    std::mt19937 rng(20021);
    const std::vector<std::string> pool = {"p", "q", "r", "s", "t"};
    int unified = 0;
    for (int i = 0; i < 1000; ++i) {
        FormulaPtr f = testing::random_formula(rng, 15, pool);
        FormulaPtr g;
        if (i % 2 == 0) {
            g = testing::random_formula(rng, 15, pool);
        } else {
            // instance-flavored partner so both branches get exercised
            std::map<std::string, FormulaPtr> b;
            b.emplace(pool[i % pool.size()], testing::random_formula(rng, 5, pool));
            g = Substitution(std::move(b)).apply(testing::random_variant(rng, f));
        }
        auto sigma = most_general_unifier(f, g);
        if (!sigma) continue;
        ++unified;
        FormulaPtr ff = sigma->apply(f);
        CHECK(equal(ff, sigma->apply(g)));
        CHECK(equal(sigma->apply(ff), ff));  // idempotence

        // symmetry up to renaming
        auto tau = most_general_unifier(g, f);
        REQUIRE(tau);
        CHECK(canonical_form(ff).text() == canonical_form(tau->apply(g)).text());
    }
    CHECK(unified > 300);
}

TEST_CASE("occurs check rejects proper self-embedding", "[unify]") {
    std::mt19937 rng(5150);
    for (int i = 0; i < 300; ++i) {
        FormulaPtr f = testing::random_formula(rng, 11, {"p", "q", "r"});
        if (f->is_variable()) continue;
        for (const auto& v : variables(f))
            CHECK_FALSE(most_general_unifier(Formula::variable(v), f));
    }
}

TEST_CASE("mgu is most general against brute-force unifiers", "[unify]") {
    std::mt19937 rng(777);
    const std::vector<std::string> pool = {"p", "q", "r"};
    int brute_unifiers = 0;
    for (int i = 0; i < 250; ++i) {
        FormulaPtr f = testing::random_formula(rng, 9, pool);
        FormulaPtr g = testing::random_formula(rng, 9, pool);
        auto sigma = most_general_unifier(f, g);
        testing::for_each_brute_unifier(f, g, [&](const Substitution& tau) {
            ++brute_unifiers;
            REQUIRE(sigma);  // completeness: a unifier exists, so mgu must
            CHECK(testing::matches(sigma->apply(f), tau.apply(f)));
        });
    }
    CHECK(brute_unifiers > 50);
}
