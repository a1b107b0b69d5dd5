#include "nwaq/mca.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nwaq/determinize.hpp"

namespace nwaq {

using Op = Instruction::Op;

bool Mca::is_accepting(State s) const {
    return std::find(accepting.begin(), accepting.end(), s) != accepting.end();
}

std::optional<State> Mca::find_state(std::string_view name) const {
    for (State s = 0; s < states.size(); ++s)
        if (states[s] == name) return s;
    return std::nullopt;
}

std::vector<Diagnostic> validate_mca(const Mca& mca) {
    std::vector<Diagnostic> out;
    if (mca.alphabet.size() == 0) out.push_back({"empty-alphabet", "alphabet has no letters"});
    std::set<std::string> seen;
    for (const auto& s : mca.states)
        if (!seen.insert(s).second) out.push_back({"duplicate-state", "state " + s + " declared twice"});
    auto valid = [&](State s) { return s < mca.states.size(); };
    for (auto s : mca.initials)
        if (!valid(s)) out.push_back({"bad-state", "initial state out of range"});
    for (auto s : mca.accepting)
        if (!valid(s)) out.push_back({"bad-state", "accepting state out of range"});
    for (std::size_t i = 0; i < mca.transitions.size(); ++i) {
        const auto& t = mca.transitions[i];
        const std::string where = "transition " + std::to_string(i + 1);
        if (!valid(t.from) || !valid(t.to)) out.push_back({"bad-state", where + " uses an unknown state"});
        if (t.letter >= mca.alphabet.size()) out.push_back({"bad-letter", where + " uses an unknown letter"});
        if (t.ops.size() != mca.n_counters)
            out.push_back({"bad-arity", where + " has " + std::to_string(t.ops.size()) + " instructions for " +
                                            std::to_string(mca.n_counters) + " counters"});
        if (std::count_if(t.ops.begin(), t.ops.end(), [](const Instruction& x) { return x.op == Op::Start; }) > 1)
            out.push_back({"multiple-start", where + " starts more than one counter"});
    }
    return out;
}

DeterminismReport is_deterministic(const Mca& mca) {
    if (mca.initials.size() != 1) return {false, "initial states: " + std::to_string(mca.initials.size())};
    std::set<std::pair<State, Letter>> seen;
    for (const auto& t : mca.transitions)
        if (!seen.emplace(t.from, t.letter).second)
            return {false, "state " + mca.states.at(t.from) + " on letter " + mca.alphabet.name(t.letter)};
    return {};
}

namespace {

/// Applies one instruction vector to the activity mask; false if the run dies.
bool admissible(const std::vector<Instruction>& ops, std::vector<bool>& active) {
    for (std::size_t j = 0; j < ops.size(); ++j) {
        switch (ops[j].op) {
            case Op::Idle:
                if (active[j]) return false;
                break;
            case Op::Start:
                if (active[j]) return false;
                active[j] = true;
                break;
            case Op::Terminate:
                if (!active[j]) return false;
                active[j] = false;
                break;
            case Op::Add:
                if (!active[j]) return false;
                break;
        }
    }
    return true;
}

}  // namespace

Value evaluate_lasso_mca(const Mca& mca, const LassoWord& w) {
    auto det = is_deterministic(mca);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    if (w.period.empty()) throw PreconditionError("lasso period must be nonempty");
    std::map<std::pair<State, Letter>, const McaTransition*> delta;
    for (const auto& t : mca.transitions) delta[{t.from, t.letter}] = &t;

    // Control run: states and activity only; counter values never influence it.
    std::vector<const McaTransition*> steps;
    State q = mca.initials[0];
    std::vector<bool> active(mca.n_counters, false);
    auto step = [&](Letter a) {
        auto it = delta.find({q, a});
        if (it == delta.end() || !admissible(it->second->ops, active)) return false;
        steps.push_back(it->second);
        q = it->second->to;
        return true;
    };
    for (Letter a : w.prefix)
        if (!step(a)) return Value::plus_infinity();
    std::map<std::pair<State, std::vector<bool>>, std::size_t> seen;
    std::size_t b1 = 0, len = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_pair(q, active), steps.size());
        if (!fresh) {
            b1 = it->second;
            len = steps.size() - b1;
            break;
        }
        for (Letter a : w.period)
            if (!step(a)) return Value::plus_infinity();
    }

    // Replay with values over two more cycles: a counter that does not
    // terminate within one full cycle after its start never does.
    struct Live {
        std::size_t start;
        Weight value;
    };
    std::vector<std::optional<Live>> counters(mca.n_counters);
    std::vector<MaybeWeight> period(len);
    bool accepting = false;
    bool activates = false;
    for (std::size_t i = 0; i < b1 + 3 * len; ++i) {
        const auto* t = i < steps.size() ? steps[i] : steps[b1 + (i - b1) % len];
        for (std::size_t j = 0; j < mca.n_counters; ++j) {
            const auto& op = t->ops[j];
            if (op.op == Op::Start) {
                counters[j] = Live{i, 0};
                if (i >= b1 && i < b1 + len) activates = true;
            } else if (op.op == Op::Terminate) {
                if (counters[j]->start >= b1 && counters[j]->start < b1 + len)
                    period[counters[j]->start - b1] = counters[j]->value;
                counters[j].reset();
            } else if (op.op == Op::Add) {
                counters[j]->value = checked_add(counters[j]->value, op.amount);
            }
        }
        if (i >= b1 && i < b1 + len && mca.is_accepting(t->to)) accepting = true;
    }
    for (const auto& c : counters)
        if (c && c->start < b1 + len) return Value::plus_infinity();
    if (!accepting || !activates) return Value::plus_infinity();
    return limavg_periodic({}, period);
}

Nwa mca_to_nwa(const Mca& mca) {
    auto det = is_deterministic(mca);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    const std::size_t n = mca.n_counters;

    // Slaves keyed by (counter, source state of the starting transition).
    std::map<std::pair<std::size_t, State>, std::uint32_t> slave_of;
    for (const auto& t : mca.transitions)
        for (std::size_t j = 0; j < n; ++j)
            if (t.ops[j].op == Op::Start) slave_of.emplace(std::make_pair(j, t.from), 0);
    std::uint32_t next = 0;
    for (auto& [key, id] : slave_of) id = next++;
    const std::uint32_t dummy = next;

    Nwa out;
    out.alphabet = mca.alphabet;

    std::map<std::pair<State, std::vector<bool>>, State> ids;
    std::vector<std::pair<State, std::vector<bool>>> keys;
    auto intern = [&](State q, const std::vector<bool>& mask) {
        auto [it, fresh] = ids.emplace(std::make_pair(q, mask), static_cast<State>(keys.size()));
        if (fresh) keys.emplace_back(q, mask);
        return it->second;
    };
    intern(mca.initials[0], std::vector<bool>(n, false));
    std::vector<Transition> trans;
    for (State s = 0; s < keys.size(); ++s) {
        const auto [q, mask] = keys[s];
        for (const auto& t : mca.transitions) {
            if (t.from != q) continue;
            auto after = mask;
            if (!admissible(t.ops, after)) continue;
            std::uint32_t label = dummy;
            for (std::size_t j = 0; j < n; ++j)
                if (t.ops[j].op == Op::Start) label = slave_of.at({j, q});
            trans.push_back({s, t.letter, intern(t.to, after), label});
        }
    }
    std::vector<std::string> names;
    std::vector<State> accepting;
    for (State s = 0; s < keys.size(); ++s) {
        std::string name = mca.states[keys[s].first] + "_";
        for (bool b : keys[s].second) name += b ? '1' : '0';
        names.push_back(std::move(name));
        if (mca.is_accepting(keys[s].first)) accepting.push_back(s);
    }
    out.master = LabeledAutomaton(std::move(names), {0}, std::move(accepting), std::move(trans));

    // Slave states: 0 before the start, 1 after termination, 2 + q while
    // the counter runs with the automaton in q.
    for (const auto& [key, id] : slave_of) {
        const auto [j, q0] = key;
        std::vector<std::string> names{"init", "done"};
        for (const auto& s : mca.states) names.push_back("run_" + s);
        std::vector<Transition> st;
        for (const auto& t : mca.transitions) {
            if (t.from == q0 && t.ops[j].op == Op::Start) st.push_back({0, t.letter, 2 + t.to, 0});
            if (t.ops[j].op == Op::Add) st.push_back({2 + t.from, t.letter, 2 + t.to, t.ops[j].amount});
            if (t.ops[j].op == Op::Terminate) st.push_back({2 + t.from, t.letter, 1, 0});
        }
        out.slaves.push_back({LabeledAutomaton(std::move(names), {0}, {1}, std::move(st)), ValueFn::Sum});
    }
    out.slaves.push_back({LabeledAutomaton({"d0"}, {0}, {0}, {}), ValueFn::Sum});
    return out;
}

namespace {

/// Counter bookkeeping of one product state.
struct CounterState {
    /// Counter of each slot, aligned with the configuration.
    std::vector<std::uint32_t> slot_counter;
    /// First weight of each slot, not yet added (only for slots opened on
    /// the previous step).
    std::vector<std::optional<Weight>> pending;
    /// Counters whose slot has ended and that terminate on the next step.
    std::vector<std::uint32_t> closing;

    auto operator<=>(const CounterState&) const = default;
};

}  // namespace

Mca nwa_to_mca(const Nwa& input, std::size_t k) {
    const Nwa nwa = exploration_view(input);
    using Key = std::pair<Configuration, CounterState>;
    std::map<Key, State> ids;
    std::vector<Key> keys;
    auto intern = [&](const Key& key) {
        auto [it, fresh] = ids.emplace(key, static_cast<State>(keys.size()));
        if (fresh) keys.push_back(key);
        return it->second;
    };
    Mca out;
    out.alphabet = nwa.alphabet;
    for (const auto& c : config_initials(nwa)) out.initials.push_back(intern({c, CounterState{}}));

    struct Raw {
        State from;
        Letter letter;
        State to;
        std::map<std::uint32_t, Instruction> ops;
    };
    std::vector<Raw> raw;
    std::size_t counters = 0;
    for (State s = 0; s < keys.size(); ++s) {
        for (Letter a = 0; a < nwa.alphabet.size(); ++a) {
            const Key key = keys[s];
            const auto& [c, cs] = key;
            for (const auto& e : config_successors(nwa, c, a, k)) {
                if (e.overflow) throw WidthExceeded(0);
                std::map<std::uint32_t, Instruction> ops;
                CounterState next;
                for (auto j : cs.closing) ops[j] = Instruction::terminate();
                std::size_t survivor = 0;
                for (std::uint32_t p = 0; p < c.slots.size(); ++p) {
                    const auto j = cs.slot_counter[p];
                    const bool ends = std::find(e.returned.begin(), e.returned.end(), p) != e.returned.end();
                    if (ends) {
                        if (cs.pending[p]) {
                            ops[j] = Instruction::add(*cs.pending[p]);
                            next.closing.push_back(j);
                        } else {
                            ops[j] = Instruction::terminate();
                        }
                        continue;
                    }
                    ops[j] = Instruction::add(checked_add(cs.pending[p].value_or(0), e.slot_weights[survivor++]));
                    next.slot_counter.push_back(j);
                    next.pending.push_back(std::nullopt);
                }
                if (e.invokes()) {
                    std::set<std::uint32_t> busy;
                    for (const auto& [j, op] : ops) busy.insert(j);
                    for (auto j : cs.slot_counter) busy.insert(j);
                    std::uint32_t j = 0;
                    while (busy.count(j)) ++j;
                    ops[j] = Instruction::start();
                    next.slot_counter.push_back(j);
                    next.pending.push_back(e.slot_weights.back());
                }
                for (const auto& [j, op] : ops) counters = std::max<std::size_t>(counters, j + 1);
                std::sort(next.closing.begin(), next.closing.end());
                raw.push_back({s, a, intern({e.to, next}), std::move(ops)});
            }
        }
    }

    out.n_counters = counters;
    for (State s = 0; s < keys.size(); ++s) {
        out.states.push_back("s" + std::to_string(s));
        if (nwa.master.is_accepting(keys[s].first.master)) out.accepting.push_back(s);
    }
    for (auto& r : raw) {
        McaTransition t{r.from, r.letter, r.to, std::vector<Instruction>(counters, Instruction::idle())};
        for (const auto& [j, op] : r.ops) t.ops[j] = op;
        out.transitions.push_back(std::move(t));
    }
    return out;
}

}  // namespace nwaq
