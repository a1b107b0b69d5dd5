#pragma once

#include <optional>

#include "nwaq/determinize.hpp"

namespace nwaq {

/// A reachable cycle of the configuration graph on which the j least
/// recently invoked slots stay put and collect a negative sum.
struct StarWitness {
    std::size_t j = 1;
    std::vector<ConfigEdge> cycle;
    Configuration anchor;
    Weight j_sum = 0;
    /// Steps from an initial configuration to the anchor.
    std::vector<ConfigEdge> prefix;
    /// Steps from the anchor back to itself through an accepting master
    /// state; empty when the cycle already visits one.
    std::vector<ConfigEdge> closing;

    /// Sum of the first j slot weights along the cycle.
    Weight recompute_j_sum() const;
    /// prefix, then cycle repeated m times followed by the closing path.
    LassoWord pumped(std::size_t m) const;
};

std::optional<StarWitness> check_star_condition(const Nwa& nwa, std::size_t k);

/// Replays every step of the witness through config_successors and checks
/// slot stability, the sign of j_sum and the accepting visit. Returns an
/// empty string when the witness is valid, otherwise the first problem.
std::string verify_star_witness(const Nwa& nwa, std::size_t k, const StarWitness& w);

}  // namespace nwaq
