#include <doctest.h>

#include "printers.hpp"

#include <algorithm>

#include "generators.hpp"
#include "nwaq/corpus.hpp"
#include "nwaq/format.hpp"
#include "nwaq/width.hpp"

using namespace nwaq;

namespace {

bool has_code(const std::vector<Diagnostic>& d, const std::string& code) {
    return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.code == code; });
}

}  // namespace

TEST_CASE("one counter values") {
    const Mca m = corpus::one_counter();
    CHECK(validate_mca(m).empty());
    CHECK(is_deterministic(m).deterministic);
    CHECK(evaluate_lasso_mca(m, parse_lasso(m.alphabet, "| hash a a a")) == Value::finite(3));
    CHECK(evaluate_lasso_mca(m, parse_lasso(m.alphabet, "| hash a hash a a a")) == Value::finite(1));
    CHECK(evaluate_lasso_mca(m, parse_lasso(m.alphabet, "| a")) == Value::plus_infinity());
    // The counter is never terminated.
    CHECK(evaluate_lasso_mca(m, parse_lasso(m.alphabet, "hash | a")) == Value::plus_infinity());
}

TEST_CASE("monitor counter validation") {
    Mca m = corpus::one_counter();
    m.transitions[0].ops.push_back(Instruction::idle());
    CHECK(has_code(validate_mca(m), "bad-arity"));

    m = corpus::one_counter();
    m.n_counters = 2;
    for (auto& t : m.transitions) t.ops.push_back(Instruction::start());
    CHECK(has_code(validate_mca(m), "multiple-start"));

    m = corpus::one_counter();
    m.states.push_back("p0");
    CHECK(has_code(validate_mca(m), "duplicate-state"));

    m = corpus::one_counter();
    m.transitions[0].to = 9;
    m.transitions[1].letter = 5;
    auto d = validate_mca(m);
    CHECK(has_code(d, "bad-state"));
    CHECK(has_code(d, "bad-letter"));

    m = corpus::one_counter();
    m.alphabet = Alphabet(std::vector<std::string>{});
    CHECK(has_code(validate_mca(m), "empty-alphabet"));
}

TEST_CASE("monitor counter determinism") {
    Mca m = corpus::one_counter();
    CHECK(is_deterministic(m).deterministic);
    m.transitions.push_back({0, 0, 1, {Instruction::start()}});
    CHECK_FALSE(is_deterministic(m).deterministic);
    m = corpus::one_counter();
    m.initials.push_back(1);
    CHECK_FALSE(is_deterministic(m).deterministic);
}

TEST_CASE("instructions on the wrong counter state kill the run") {
    Mca m = corpus::one_counter();
    // Add on an inactive counter.
    m.transitions[0].ops[0] = Instruction::add(1);
    CHECK(evaluate_lasso_mca(m, parse_lasso(m.alphabet, "| a")) == Value::plus_infinity());
}

TEST_CASE("translation of the one counter automaton") {
    const Mca m = corpus::one_counter();
    const Nwa n = mca_to_nwa(m);
    CHECK(validate_nwa(n).empty());
    CHECK(is_deterministic(n).deterministic);
    CHECK(has_width(n, m.n_counters).holds);
    for (const char* w : {"| hash a a a", "| hash hash", "a | a hash a hash", "| a"}) {
        const LassoWord lw = parse_lasso(m.alphabet, w);
        CHECK(evaluate_lasso(n, lw, m.n_counters) == evaluate_lasso_mca(m, lw));
    }
    const Mca back = nwa_to_mca(n, 1);
    CHECK(validate_mca(back).empty());
    for (const char* w : {"| hash a a a", "| hash hash", "a | a hash a hash"}) {
        const LassoWord lw = parse_lasso(m.alphabet, w);
        CHECK(evaluate_lasso_mca(back, lw) == evaluate_lasso_mca(m, lw));
    }
}

TEST_CASE("translations keep lasso values on random automata") {
    testing::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
        const Mca m = testing::random_mca(rng);
        REQUIRE(validate_mca(m).empty());
        const Nwa n = mca_to_nwa(m);
        CHECK(validate_nwa(n).empty());
        CHECK(is_deterministic(n).deterministic);
        for (int j = 0; j < 10; ++j) {
            const LassoWord w = testing::random_lasso(rng, m.alphabet.size(), 3, 6);
            CAPTURE(format_lasso(m.alphabet, w));
            CHECK(evaluate_lasso(n, w, m.n_counters) == evaluate_lasso_mca(m, w));
        }
    }
    int done = 0;
    for (int i = 0; i < 100; ++i) {
        const Nwa n = testing::random_nwa(rng);
        if (!has_width(n, 2).holds) continue;
        const Mca m = nwa_to_mca(n, 2);
        CHECK(validate_mca(m).empty());
        CHECK(is_deterministic(m).deterministic);
        for (int j = 0; j < 10; ++j) {
            const LassoWord w = testing::random_lasso(rng, n.alphabet.size(), 3, 6);
            CAPTURE(format_lasso(n.alphabet, w));
            CHECK(evaluate_lasso_mca(m, w) == evaluate_lasso(n, w, 2));
        }
        ++done;
    }
    CHECK(done > 30);
}

TEST_CASE("translation needs the width") {
    CHECK_THROWS_AS(nwa_to_mca(corpus::art(), 3), WidthExceeded);
}
