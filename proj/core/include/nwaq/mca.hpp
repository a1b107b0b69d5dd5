#pragma once

#include "nwaq/automaton.hpp"

namespace nwaq {

/// Per-counter instruction of one transition.
struct Instruction {
    enum class Op : std::uint8_t { Idle, Start, Terminate, Add };
    Op op = Op::Idle;
    Weight amount = 0;

    static Instruction idle() { return {Op::Idle, 0}; }
    static Instruction start() { return {Op::Start, 0}; }
    static Instruction terminate() { return {Op::Terminate, 0}; }
    static Instruction add(Weight w) { return {Op::Add, w}; }

    auto operator<=>(const Instruction&) const = default;
};

struct McaTransition {
    State from = 0;
    Letter letter = 0;
    State to = 0;
    std::vector<Instruction> ops;

    auto operator<=>(const McaTransition&) const = default;
};

/// Automaton with monitor counters and a LimAvg value function. Idle
/// requires the counter inactive; Add and Terminate require it active.
struct Mca {
    Alphabet alphabet;
    std::vector<std::string> states;
    std::vector<State> initials;
    std::vector<State> accepting;
    std::size_t n_counters = 0;
    std::vector<McaTransition> transitions;

    bool operator==(const Mca&) const = default;

    bool is_accepting(State s) const;
    std::optional<State> find_state(std::string_view name) const;
};

std::vector<Diagnostic> validate_mca(const Mca& mca);

DeterminismReport is_deterministic(const Mca& mca);

Value evaluate_lasso_mca(const Mca& mca, const LassoWord& w);

/// Master over (state, active counters); one slave per (counter, state
/// that starts it) and a final dummy slave.
Nwa mca_to_nwa(const Mca& mca);

/// Product MCA over configurations of width k with lowest-free counter
/// assignment. A slave's first weight is added on the step after its
/// start, so a one-letter run keeps its counter one step longer and the
/// result may use more than k counters.
Mca nwa_to_mca(const Nwa& nwa, std::size_t k);

}  // namespace nwaq
