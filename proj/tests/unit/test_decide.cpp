#include <doctest.h>

#include "printers.hpp"

#include "generators.hpp"
#include "nwaq/corpus.hpp"
#include "nwaq/decide.hpp"
#include "nwaq/format.hpp"
#include "nwaq/width.hpp"

using namespace nwaq;

TEST_CASE("infimum of the corpus instances") {
    CHECK(infimum(corpus::cond_motivation(false), 2).value == Value::finite(0));
    CHECK(infimum(corpus::cond_motivation(true), 2).value == Value::neg_infinity());
    CHECK(infimum(corpus::average_excess(), 1).value == Value::neg_infinity());
    CHECK(infimum(corpus::art_one(), 1).value == Value::finite(1));
    CHECK(infimum(corpus::k_art(2), 2).value == Value::finite(1));
    CHECK(infimum(corpus::art_one_typed(3), 3).value == Value::finite(1));
    CHECK_THROWS_AS(infimum(corpus::art(), 4), PreconditionError);
}

TEST_CASE("infimum certificates evaluate to the infimum") {
    for (const auto& [n, k] : std::vector<std::pair<Nwa, std::size_t>>{
             {corpus::art_one(), 1}, {corpus::k_art(2), 2}, {corpus::cond_motivation(false), 2}}) {
        const auto r = infimum(n, k);
        REQUIRE(r.certificate.lasso);
        if (r.certificate.exact) CHECK(evaluate_lasso(n, *r.certificate.lasso, k) == r.value);
    }
    const auto star = infimum(corpus::cond_motivation(true), 2);
    REQUIRE(star.certificate.star);
}

TEST_CASE("emptiness answers and certificates") {
    const Nwa n = corpus::k_art(2);
    auto yes = emptiness(n, 2, {Rational(1), false});
    CHECK(yes.answer);
    REQUIRE(yes.certificate.lasso);
    CHECK(Threshold{Rational(1), false}.admits(evaluate_lasso(n, *yes.certificate.lasso, 2)));

    auto no = emptiness(n, 2, {Rational(1), true});
    CHECK_FALSE(no.answer);
    CHECK(no.infimum == Value::finite(1));

    auto star = emptiness(corpus::average_excess(), 1, {Rational(-1000), true});
    CHECK(star.answer);
    CHECK(star.certificate.star);
}

TEST_CASE("universality through the mirror") {
    const Nwa n = corpus::art_one();
    const Nwa m = mirror(n);
    CHECK(m.slaves[0].value_fn == ValueFn::Sum);
    const LassoWord w = parse_lasso(n.alphabet, "| r hash g");
    CHECK(evaluate_lasso(m, w, 1) == Value::finite(-2));
    // Response times are at least one and unbounded.
    CHECK(universality_deterministic(n, 1, {Rational(0), false}) == false);
    CHECK_FALSE(universality_deterministic(n, 1, {Rational(1000), false}));
    // Every value is at least 1: "value >= 1" holds for all words, i.e. the
    // mirror never goes above -1.
    CHECK(universality_deterministic(m, 1, {Rational(-1), false}));
    CHECK_FALSE(universality_deterministic(m, 1, {Rational(-1), true}));

    Nwa nd = n;
    nd.master = LabeledAutomaton(n.master.state_names(), {0, 1}, n.master.accepting_states(),
                                 {n.master.transitions().begin(), n.master.transitions().end()});
    CHECK_THROWS_AS(universality_deterministic(nd, 1, {Rational(0), false}), NondeterministicInput);
}

TEST_CASE("decisions agree with lasso enumeration on random automata") {
    testing::Rng rng(61);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        const Nwa n = testing::random_nwa(rng);
        const std::size_t k = 2;
        if (!has_width(n, k).holds) continue;
        const auto inf = infimum(n, k);
        const auto en = enumerate_lasso_infimum(n, 1, 3, k);
        // Lassos are words, so the infimum cannot exceed any of them.
        CHECK_FALSE(en.best < inf.value);
        if (en.best.is_finite()) {
            const Threshold t{en.best.rational(), false};
            const auto r = emptiness(n, k, t);
            CHECK(r.answer);
            if (r.certificate.lasso && r.certificate.exact)
                CHECK(t.admits(evaluate_lasso(n, *r.certificate.lasso, k)));
        }
        if (inf.value.is_finite()) {
            CHECK_FALSE(emptiness(n, k, {inf.value.rational() - Rational(1, 1000), false}).answer);
            CHECK(emptiness(n, k, {inf.value.rational(), false}).answer);
        }
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("nondeterministic input goes through materialization") {
    testing::Rng rng(67);
    testing::NwaShape s;
    s.deterministic = false;
    s.max_slave_states = 3;
    s.master_density = 1.0;
    s.acyclic_slaves = true;
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const Nwa n = testing::random_nwa(rng, s);
        if (!has_width(n, 2).holds) continue;
        const auto inf = infimum(n, 2);
        const auto en = enumerate_lasso_infimum(n, 1, 3, 2);
        CHECK_FALSE(en.best < inf.value);
        ++checked;
    }
    CHECK(checked > 10);
}
