#pragma once

#include <optional>

#include "nwaq/automaton.hpp"
#include "nwaq/meanpayoff.hpp"

namespace nwaq {

/// Width-1 NWA with the same value as `nwa` on every lasso word. A single
/// compound slave per (configuration, carried weight) sums the weights of
/// all simulated slaves between consecutive invocations.
Nwa reduce_width1(const Nwa& nwa, std::size_t k);

/// Minimal slave value over words v with v[0] = a on which the master
/// moves from q1 to q2 invoking slave i first and only silent slaves
/// afterwards, while the slave run ends exactly at the end of v.
struct SlaveValue {
    Value value;  // finite or neg_infinity
    Word word;    // a realizing word, minimal when the value is finite
};

std::optional<SlaveValue> min_slave_value(const Nwa& nwa, State q1, Letter a, State q2, std::uint32_t i,
                                          bool visit_accepting = false);

/// Letter of the fragment automaton: a maximal slave run (valued) or a
/// nonempty stretch of silent master steps.
struct FragmentLetter {
    bool silent = false;
    State q1 = 0;
    State q2 = 0;
    Letter a = 0;            // valued only
    std::uint32_t slave = 0;  // valued only
    /// The master passes an accepting state after leaving q1.
    bool visits_accepting = false;
    Value weight = Value::bottom();
    Word word;
};

/// LimAvg automaton with silent moves over fragment letters, as a ratio
/// graph. Nodes are (master state, last letter silent, last letter visits
/// accepting); edge e reads letters[edge_letter[e]].
struct FragmentAutomaton {
    std::vector<FragmentLetter> letters;
    RatioGraph graph;
    std::vector<std::size_t> edge_letter;

    Word expand(const std::vector<std::size_t>& edges) const;
};

/// A fragment of unbounded negative value lies on an accepting cycle.
class NegInfinityFragment : public Error {
public:
    explicit NegInfinityFragment(const std::string& where)
        : Error("fragment with unbounded negative value: " + where) {}
};

FragmentAutomaton fragment_automaton(const Nwa& nwa);

}  // namespace nwaq
