#include <doctest.h>

#include "printers.hpp"

#include <functional>

#include "generators.hpp"
#include "nwaq/corpus.hpp"
#include "nwaq/width.hpp"

using namespace nwaq;

namespace {

bool exceeds(const Nwa& n, const Word& w, std::size_t k) {
    try {
        trace_run(n, w, k);
    } catch (const WidthExceeded&) {
        return true;
    }
    return false;
}

/// Some word of length at most len drives the run past k slots.
bool brute_exceeds(const Nwa& n, std::size_t k, std::size_t len) {
    Word w;
    std::function<bool()> go = [&]() {
        if (exceeds(n, w, k)) return true;
        if (w.size() == len) return false;
        for (Letter a = 0; a < n.alphabet.size(); ++a) {
            w.push_back(a);
            const bool hit = go();
            w.pop_back();
            if (hit) return true;
        }
        return false;
    };
    return go();
}

}  // namespace

TEST_CASE("ART has no bounded width") {
    const Nwa art = corpus::art();
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto r = has_width(art, k);
        CHECK_FALSE(r.holds);
        REQUIRE(r.witness);
        CHECK(r.witness->size() == k + 1);
        CHECK(exceeds(art, *r.witness, k));
        CHECK_FALSE(exceeds(art, *r.witness, k + 1));
    }
    CHECK_FALSE(minimal_width(art, 4));
}

TEST_CASE("k-ART has width exactly k") {
    for (std::size_t k : {2, 3}) {
        const Nwa n = corpus::k_art(k);
        CHECK(has_width(n, k).holds);
        const auto r = has_width(n, k - 1);
        CHECK_FALSE(r.holds);
        REQUIRE(r.witness);
        CHECK(exceeds(n, *r.witness, k - 1));
        CHECK(minimal_width(n, 5) == k);
    }
    CHECK(has_width(corpus::art_one(), 1).holds);
}

TEST_CASE("width witness is the shortest word") {
    testing::Rng rng(23);
    for (int i = 0; i < 150; ++i) {
        const Nwa n = testing::random_nwa(rng);
        for (std::size_t k = 1; k <= 2; ++k) {
            const auto r = has_width(n, k);
            if (r.holds) {
                CHECK_FALSE(brute_exceeds(n, k, 5));
                continue;
            }
            REQUIRE(r.witness);
            CHECK(exceeds(n, *r.witness, k));
            if (!r.witness->empty()) CHECK_FALSE(brute_exceeds(n, k, r.witness->size() - 1));
        }
    }
}

TEST_CASE("width is monotone") {
    testing::Rng rng(29);
    testing::NwaShape s;
    s.deterministic = false;
    for (int i = 0; i < 100; ++i) {
        const Nwa n = testing::random_nwa(rng, s);
        bool before = false;
        for (std::size_t k = 1; k <= 4; ++k) {
            const bool now = has_width(n, k).holds;
            CHECK((!before || now));
            before = now;
        }
    }
}
