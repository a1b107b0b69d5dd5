#include <doctest.h>

#include "printers.hpp"

#include "nwaq/corpus.hpp"
#include "nwaq/format.hpp"
#include "nwaq/oracle.hpp"
#include "nwaq/width.hpp"

using namespace nwaq;

TEST_CASE("every corpus instance validates and is deterministic") {
    const auto all = corpus::all();
    CHECK(all.size() == 10);
    for (const auto& e : all) {
        CAPTURE(e.name);
        if (const auto* n = std::get_if<Nwa>(&e.model)) {
            CHECK(validate_nwa(*n).empty());
            CHECK(is_deterministic(*n).deterministic);
        } else {
            CHECK(validate_mca(std::get<Mca>(e.model)).empty());
        }
    }
}

TEST_CASE("documented widths") {
    CHECK(minimal_width(corpus::art_one(), 4) == 1);
    CHECK(minimal_width(corpus::k_art(2), 4) == 2);
    CHECK(minimal_width(corpus::k_art(3), 4) == 3);
    CHECK(minimal_width(corpus::art_one_typed(2), 4) == 2);
    CHECK(minimal_width(corpus::art_one_typed(3), 4) == 3);
    CHECK(minimal_width(corpus::average_excess(), 4) == 1);
    CHECK(minimal_width(corpus::cond_motivation(false), 4) == 2);
    CHECK(minimal_width(corpus::cond_motivation(true), 4) == 2);
    CHECK_FALSE(minimal_width(corpus::art(), 4));
}

TEST_CASE("language of ART over L1") {
    const Nwa n = corpus::art_one();
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r g"), 1) == Value::finite(1));
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r hash hash g hash"), 1) == Value::finite(3));
    // Two requests before a grant leave L1.
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r r g"), 1) == Value::plus_infinity());
}

TEST_CASE("k-ART allows k pending requests") {
    const Nwa n = corpus::k_art(2);
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r r g"), 2) == Value::finite(Rational(3, 2)));
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r r r g"), 2) == Value::plus_infinity());
}

TEST_CASE("typed requests") {
    const Nwa n = corpus::art_one_typed(2);
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r1 r2 g1 g2"), 2) == Value::finite(2));
    CHECK(evaluate_lasso(n, parse_lasso(n.alphabet, "| r1 r1 g1"), 2) == Value::plus_infinity());
}

TEST_CASE("motivating pair") {
    const Nwa a1 = corpus::cond_motivation(false), a2 = corpus::cond_motivation(true);
    CHECK(evaluate_lasso(a1, parse_lasso(a1.alphabet, "| one two a a hash"), 2) == Value::finite(0));
    CHECK(evaluate_lasso(a2, parse_lasso(a2.alphabet, "| two one a a hash"), 2) == Value::finite(0));
}
