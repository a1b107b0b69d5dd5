#pragma once

#include <optional>

#include "nwaq/starcond.hpp"

namespace nwaq {

/// Evidence for a decision. At most one of star and lasso is set; the lasso
/// is over the input alphabet.
struct Certificate {
    std::optional<StarWitness> star;
    std::optional<LassoWord> lasso;
    /// False when the value is approached by the lasso family only in the
    /// limit; the lasso itself then misses the threshold.
    bool exact = true;
};

struct EmptinessResult {
    /// Some word has a value satisfying the threshold.
    bool answer = false;
    Certificate certificate;
    /// Infimum of the fragment automaton when answer is false.
    std::optional<Value> infimum;
};

EmptinessResult emptiness(const Nwa& nwa, std::size_t k, const Threshold& t);

struct InfimumResult {
    Value value;
    Certificate certificate;
};

InfimumResult infimum(const Nwa& nwa, std::size_t k);

/// Same automaton with every slave weight replaced by the negated
/// effective weight; slaves become Sum.
Nwa mirror(const Nwa& nwa);

/// True iff no accepted word has a value violating t.
bool universality_deterministic(const Nwa& nwa, std::size_t k, const Threshold& t);

}  // namespace nwaq
