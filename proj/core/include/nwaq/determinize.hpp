#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nwaq/configuration.hpp"

namespace nwaq {

inline constexpr std::uint32_t kNoSlave = UINT32_MAX;

/// One step of the configuration graph under a fixed joint choice of
/// master and slave transitions.
struct ConfigEdge {
    Configuration from;
    Letter letter = 0;
    Configuration to;
    /// Slave opened by this step, kNoSlave when the invocation is silent.
    std::uint32_t invoked = kNoSlave;
    /// Effective weights of the surviving slots, then of the new slot.
    std::vector<Weight> slot_weights;
    /// Positions in `from` whose slaves terminate before the letter.
    std::vector<std::uint32_t> returned;
    bool master_accepting = false;
    bool all_terminated_bit = false;
    /// More than k slots would be active; `to` is not a valid configuration.
    bool overflow = false;

    /// Choice labels: the master transition and one slave transition per
    /// entry of slot_weights, as indexes into the transitions() spans.
    std::uint32_t master_choice = 0;
    std::vector<std::uint32_t> slot_choices;

    bool invokes() const { return invoked != kNoSlave; }
    bool operator==(const ConfigEdge&) const = default;
    std::size_t survivors() const { return slot_weights.size() - (invokes() ? 1 : 0); }
};

std::vector<Configuration> config_initials(const Nwa& nwa);

std::vector<ConfigEdge> config_successors(const Nwa& nwa, const Configuration& c, Letter a, std::size_t k);

/// Returns the NWA used for configuration exploration: deterministic input
/// unchanged, nondeterministic input with normalized slaves.
Nwa exploration_view(const Nwa& nwa);

/// Reachable part of the configuration graph with capacity k.
struct ConfigGraph {
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        ConfigEdge step;
    };

    std::vector<Configuration> nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> initial_nodes;
    /// BFS tree: edge index that discovered each node, or SIZE_MAX for initials.
    std::vector<std::size_t> parent;

    /// First overflow step in BFS order, with the letters leading to it.
    std::optional<Word> overflow_witness;

    Word path_letters(std::size_t node) const;
    std::vector<std::size_t> path_edges(std::size_t node) const;
};

/// Explores from config_initials in breadth-first order, letters ascending.
/// Overflow steps are recorded but not followed.
ConfigGraph explore_configurations(const Nwa& nwa, std::size_t k, std::size_t cap = SIZE_MAX);

struct ConfigurationCount {
    std::size_t reachable = 0;
    BigInt syntactic_bound;
};

ConfigurationCount count_configurations(const Nwa& nwa, std::size_t k);

struct Materialized {
    Nwa nwa;
    /// Original letter of each extended letter.
    std::vector<Letter> projection;
    ConfigGraph graph;
};

/// Explicit deterministic NWA over the reachable configuration steps.
Materialized materialize_deterministic(const Nwa& nwa, std::size_t k, std::size_t cap = 10000);

}  // namespace nwaq
