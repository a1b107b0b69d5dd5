#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nwaq/value.hpp"

namespace nwaq {

using Letter = std::uint32_t;
using State = std::uint32_t;
using Word = std::vector<Letter>;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    std::size_t size() const { return letters_.size(); }
    const std::string& name(Letter a) const { return letters_.at(a); }
    const std::vector<std::string>& letters() const { return letters_; }
    std::optional<Letter> find(std::string_view name) const;

    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

private:
    std::vector<std::string> letters_;
    std::unordered_map<std::string, Letter> index_;
};

struct Transition {
    State from = 0;
    Letter letter = 0;
    State to = 0;
    std::int64_t label = 0;

    auto operator<=>(const Transition&) const = default;
};

/// Finite automaton with integer transition labels. Transitions are kept
/// sorted by (from, letter, to, label) and deduplicated.
class LabeledAutomaton {
public:
    LabeledAutomaton() = default;
    LabeledAutomaton(std::vector<std::string> state_names, std::vector<State> initials,
                     std::vector<State> accepting, std::vector<Transition> transitions);

    std::size_t num_states() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& state_name(State s) const { return names_.at(s); }
    std::optional<State> find_state(std::string_view name) const;

    const std::vector<State>& initials() const { return initials_; }
    const std::vector<State>& accepting_states() const { return accepting_; }
    bool is_accepting(State s) const { return s < accepting_flag_.size() && accepting_flag_[s]; }

    std::span<const Transition> transitions() const { return transitions_; }
    /// Transitions leaving s, sorted by letter.
    std::span<const Transition> out(State s) const;
    /// Transitions leaving s on letter a.
    std::span<const Transition> on(State s, Letter a) const;

    bool operator==(const LabeledAutomaton& o) const {
        return names_ == o.names_ && initials_ == o.initials_ && accepting_ == o.accepting_ &&
               transitions_ == o.transitions_;
    }

private:
    std::vector<std::string> names_;
    std::vector<State> initials_;
    std::vector<State> accepting_;
    std::vector<bool> accepting_flag_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> offsets_;
};

enum class ValueFn { Sum, SumPlus, LimAvg };

std::string value_fn_name(ValueFn f);

Weight finite_value(ValueFn f, const std::vector<Weight>& weights);

struct WeightedAutomaton {
    LabeledAutomaton base;
    ValueFn value_fn = ValueFn::Sum;

    /// Initial state accepting and no transitions at all.
    bool is_dummy() const;
    /// Weight as it enters the value (absolute for Sum⁺).
    Weight effective(Weight w) const { return value_fn == ValueFn::SumPlus ? checked_abs(w) : w; }

    bool operator==(const WeightedAutomaton&) const = default;
};

/// Nested weighted automaton with a LimAvg master. Master labels are
/// zero-based slave indexes.
struct Nwa {
    Alphabet alphabet;
    LabeledAutomaton master;
    std::vector<WeightedAutomaton> slaves;

    bool operator==(const Nwa&) const = default;

    /// True if invoking slave i never opens a slot (its initial state accepts).
    bool silent_slave(std::size_t i) const;
};

struct LassoWord {
    Word prefix;
    Word period;

    bool operator==(const LassoWord&) const = default;
};

struct Diagnostic {
    std::string code;
    std::string message;
};

std::vector<Diagnostic> validate_nwa(const Nwa& nwa);

struct DeterminismReport {
    bool deterministic = true;
    std::string site;
};

DeterminismReport is_deterministic(const Nwa& nwa);

/// True if the automaton has one initial state and at most one transition per (state, letter).
bool is_functional(const LabeledAutomaton& a, std::string* site = nullptr);

/// Structural prefix-freeness on the trimmed automaton.
bool is_prefix_free(const LabeledAutomaton& a, std::string* site = nullptr);

/// Splits every accepting slave state with outgoing transitions into a
/// non-accepting copy keeping the transitions and an accepting sink.
Nwa normalize_slaves(const Nwa& nwa);

std::string format_word(const Alphabet& sigma, const Word& w);
std::string format_lasso(const Alphabet& sigma, const LassoWord& w);

}  // namespace nwaq
