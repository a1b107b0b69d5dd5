#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nwaq/determinize.hpp"

namespace nwaq {

/// What one position of a run contributes to the value sequence.
struct RunStep {
    /// Slot positions terminating before the letter, ascending.
    std::vector<std::uint32_t> terminated;
    /// Weights of surviving slots, then of the new slot if one is opened.
    std::vector<Weight> weights;
    bool opens_slot = false;
    bool master_accepting = false;

    static RunStep from_edge(const ConfigEdge& e);
};

/// Value of the ultimately periodic run prefix·cycle^ω. The cycle must
/// return to the configuration it starts from; max_slots bounds the number
/// of simultaneously active slots.
Value evaluate_run_lasso(const std::vector<RunStep>& prefix, const std::vector<RunStep>& cycle,
                         std::size_t max_slots);

/// Lasso evaluator for a deterministic NWA.
class LassoEvaluator {
public:
    LassoEvaluator(const Nwa& nwa, std::size_t width_cap);

    Value evaluate(const LassoWord& w) const;

private:
    static constexpr std::size_t kDead = SIZE_MAX;
    static constexpr std::size_t kOverflow = SIZE_MAX - 1;

    std::size_t cap_;
    std::size_t letters_;
    std::size_t initial_;
    /// Edge of the configuration graph per (node, letter), or kDead/kOverflow.
    std::vector<std::size_t> next_;
    std::vector<std::size_t> target_;
    std::vector<RunStep> steps_;
};

Value evaluate_lasso(const Nwa& nwa, const LassoWord& w, std::size_t width_cap);

/// Least value over the runs on w that repeat after at most max_repeats
/// copies of the period. Runs exceeding width_cap are ignored. For a
/// nondeterministic automaton this is an upper bound on the value of w.
Value evaluate_lasso_runs(const Nwa& nwa, const LassoWord& w, std::size_t width_cap, std::size_t max_repeats = 2);

struct TraceRecord {
    Configuration before;
    /// Slave opened at this position, kNoSlave for silent invocations.
    std::uint32_t invoked = kNoSlave;
    /// (invocation position, value) pairs returned before this letter;
    /// silent invocations return nullopt at their own position.
    std::vector<std::pair<std::size_t, MaybeWeight>> returned;
};

struct RunTrace {
    std::vector<TraceRecord> records;
    /// Values of slots whose state is accepting after the last letter.
    std::vector<std::pair<std::size_t, Weight>> returned_at_end;
    /// False if the run died before the end of the word.
    bool complete = true;

    /// Non-silent returned values in invocation order.
    std::vector<Weight> values() const;
};

RunTrace trace_run(const Nwa& nwa, const Word& word, std::size_t width_cap);

struct LassoBounds {
    std::size_t max_prefix = 2;
    std::size_t max_period = 6;
};

struct LassoSearchResult {
    Value best = Value::plus_infinity();
    std::optional<LassoWord> witness;
};

/// Calls f on every lasso within bounds whose master run does not die on
/// prefix·period; only meaningful for a deterministic master.
void for_each_lasso(const Nwa& nwa, LassoBounds bounds, const std::function<void(const LassoWord&)>& f);

/// Minimum over in-bounds lassos. Lassos that exceed the width cap are skipped.
LassoSearchResult enumerate_lasso_infimum(const Nwa& nwa, std::size_t max_prefix, std::size_t max_period,
                                          std::size_t width_cap);

/// Witness order: shorter period, then period letters, then prefix.
bool lasso_order(const LassoWord& a, const LassoWord& b);

}  // namespace nwaq
