#pragma once

#include <optional>
#include <vector>

#include "nwaq/value.hpp"

namespace nwaq {

/// Graph whose infinite paths are scored by cost per tick. Silent edges
/// have no tick and cost zero.
struct RatioGraph {
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        Weight cost = 0;
        int ticks = 1;
    };

    std::size_t num_nodes = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> initial;
    std::vector<bool> accepting;

    std::size_t add_node(bool is_accepting = false);
    void add_edge(std::size_t from, std::size_t to, Weight cost, int ticks = 1);

    /// Throws PreconditionError on malformed input.
    void check() const;
};

/// access leads from an initial node to the start of cycle, a closed walk.
struct RatioLasso {
    std::vector<std::size_t> access;
    std::vector<std::size_t> cycle;
};

Rational lasso_ratio(const RatioGraph& g, const RatioLasso& w);

/// True if the cycle is closed, visits an accepting node and has a tick,
/// and access connects an initial node to it.
bool lasso_is_accepting(const RatioGraph& g, const RatioLasso& w);

struct ThresholdResult {
    bool holds = false;
    std::optional<RatioLasso> witness;
    /// False when the threshold is met only in the limit: the witness
    /// cycle attains the ratio but an accepting visit costs extra.
    bool exact = true;
};

ThresholdResult threshold_emptiness(const RatioGraph& g, const Threshold& t);

struct RatioInfimum {
    Value value = Value::plus_infinity();
    std::optional<RatioLasso> witness;
    bool exact = true;
};

RatioInfimum infimum_ratio(const RatioGraph& g);

}  // namespace nwaq
