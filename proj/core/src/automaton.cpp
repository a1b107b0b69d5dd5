#include "nwaq/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace nwaq {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    for (std::size_t i = 0; i < letters_.size(); ++i)
        index_.emplace(letters_[i], static_cast<Letter>(i));
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {
void sort_unique(std::vector<State>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace

LabeledAutomaton::LabeledAutomaton(std::vector<std::string> state_names, std::vector<State> initials,
                                   std::vector<State> accepting, std::vector<Transition> transitions)
    : names_(std::move(state_names)),
      initials_(std::move(initials)),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)) {
    sort_unique(initials_);
    sort_unique(accepting_);
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    accepting_flag_.assign(names_.size(), false);
    for (State s : accepting_)
        if (s < names_.size()) accepting_flag_[s] = true;
    // Out-of-range sources are kept for diagnostics but never indexed.
    offsets_.assign(names_.size() + 1, 0);
    for (const auto& t : transitions_)
        if (t.from < names_.size()) ++offsets_[t.from + 1];
    for (std::size_t s = 0; s < names_.size(); ++s) offsets_[s + 1] += offsets_[s];
}

std::optional<State> LabeledAutomaton::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<State>(i);
    return std::nullopt;
}

std::span<const Transition> LabeledAutomaton::out(State s) const {
    if (s >= names_.size()) return {};
    return std::span<const Transition>(transitions_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
}

std::span<const Transition> LabeledAutomaton::on(State s, Letter a) const {
    auto o = out(s);
    auto lo = std::lower_bound(o.begin(), o.end(), a, [](const Transition& t, Letter x) { return t.letter < x; });
    auto hi = std::upper_bound(lo, o.end(), a, [](Letter x, const Transition& t) { return x < t.letter; });
    return o.subspan(static_cast<std::size_t>(lo - o.begin()), static_cast<std::size_t>(hi - lo));
}

std::string value_fn_name(ValueFn f) {
    switch (f) {
        case ValueFn::Sum: return "sum";
        case ValueFn::SumPlus: return "sum+";
        case ValueFn::LimAvg: return "limavg";
    }
    return "sum";
}

Weight finite_value(ValueFn f, const std::vector<Weight>& weights) {
    if (f == ValueFn::SumPlus) return finite_value_sum_plus(weights);
    if (f == ValueFn::Sum) return finite_value_sum(weights);
    throw PreconditionError("finite_value needs sum or sum+");
}

bool WeightedAutomaton::is_dummy() const {
    return base.initials().size() == 1 && base.is_accepting(base.initials()[0]) && base.transitions().empty();
}

bool Nwa::silent_slave(std::size_t i) const {
    const auto& b = slaves.at(i).base;
    for (State s : b.initials())
        if (!b.is_accepting(s)) return false;
    return !b.initials().empty();
}

namespace {
void check_automaton(const LabeledAutomaton& a, std::size_t sigma, const std::string& where,
                     std::vector<Diagnostic>& out) {
    const auto n = a.num_states();
    for (State s : a.initials())
        if (s >= n) out.push_back({"bad-state", where + ": initial state " + std::to_string(s) + " out of range"});
    for (State s : a.accepting_states())
        if (s >= n) out.push_back({"bad-state", where + ": accepting state " + std::to_string(s) + " out of range"});
    for (const auto& t : a.transitions()) {
        if (t.from >= n || t.to >= n)
            out.push_back({"bad-state", where + ": transition endpoint out of range"});
        if (t.letter >= sigma) out.push_back({"bad-letter", where + ": transition letter out of range"});
    }
    std::set<std::string> seen;
    for (const auto& name : a.state_names())
        if (!seen.insert(name).second) out.push_back({"duplicate-state", where + ": state " + name + " repeated"});
}
}  // namespace

std::vector<Diagnostic> validate_nwa(const Nwa& nwa) {
    std::vector<Diagnostic> out;
    const auto sigma = nwa.alphabet.size();
    if (sigma == 0) out.push_back({"empty-alphabet", "alphabet has no letters"});
    std::set<std::string> letters(nwa.alphabet.letters().begin(), nwa.alphabet.letters().end());
    if (letters.size() != sigma) out.push_back({"duplicate-letter", "alphabet repeats a letter"});
    check_automaton(nwa.master, sigma, "master", out);
    for (const auto& t : nwa.master.transitions())
        if (t.label < 0 || static_cast<std::size_t>(t.label) >= nwa.slaves.size())
            out.push_back({"bad-slave-index", "master transition invokes slave " + std::to_string(t.label + 1) +
                                                  " but there are " + std::to_string(nwa.slaves.size())});
    for (std::size_t i = 0; i < nwa.slaves.size(); ++i) {
        const std::string where = "slave " + std::to_string(i + 1);
        const auto& b = nwa.slaves[i];
        if (b.value_fn == ValueFn::LimAvg)
            out.push_back({"bad-slave-valuefn", where + ": value function must be sum or sum+"});
        check_automaton(b.base, sigma, where, out);
    }
    return out;
}

bool is_functional(const LabeledAutomaton& a, std::string* site) {
    if (a.initials().size() != 1) {
        if (site) *site = std::to_string(a.initials().size()) + " initial states";
        return false;
    }
    for (std::size_t s = 0; s < a.num_states(); ++s) {
        auto o = a.out(static_cast<State>(s));
        for (std::size_t i = 1; i < o.size(); ++i)
            if (o[i].letter == o[i - 1].letter) {
                if (site) *site = "state " + a.state_name(static_cast<State>(s)) + " has several transitions on one letter";
                return false;
            }
    }
    return true;
}

namespace {
std::vector<bool> forward_reach(const LabeledAutomaton& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> work;
    for (State s : a.initials())
        if (s < seen.size() && !seen[s]) seen[s] = true, work.push_back(s);
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (const auto& t : a.out(s))
            if (t.to < seen.size() && !seen[t.to]) seen[t.to] = true, work.push_back(t.to);
    }
    return seen;
}

std::vector<bool> backward_reach(const LabeledAutomaton& a) {
    const auto n = a.num_states();
    std::vector<std::vector<State>> rev(n);
    for (const auto& t : a.transitions())
        if (t.from < n && t.to < n) rev[t.to].push_back(t.from);
    std::vector<bool> seen(n, false);
    std::deque<State> work;
    for (State s : a.accepting_states())
        if (s < n && !seen[s]) seen[s] = true, work.push_back(s);
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (State p : rev[s])
            if (!seen[p]) seen[p] = true, work.push_back(p);
    }
    return seen;
}
}  // namespace

bool is_prefix_free(const LabeledAutomaton& a, std::string* site) {
    const auto fwd = forward_reach(a);
    const auto bwd = backward_reach(a);
    for (State s : a.accepting_states()) {
        if (s >= a.num_states() || !fwd[s]) continue;
        for (const auto& t : a.out(s))
            if (t.to < a.num_states() && bwd[t.to]) {
                if (site) *site = "accepting state " + a.state_name(s) + " continues to an accepting path";
                return false;
            }
    }
    return true;
}

DeterminismReport is_deterministic(const Nwa& nwa) {
    DeterminismReport r;
    std::string site;
    if (!is_functional(nwa.master, &site)) return {false, "master: " + site};
    for (std::size_t i = 0; i < nwa.slaves.size(); ++i) {
        const auto& b = nwa.slaves[i].base;
        if (!is_functional(b, &site) || !is_prefix_free(b, &site))
            return {false, "slave " + std::to_string(i + 1) + ": " + site};
    }
    return r;
}

Nwa normalize_slaves(const Nwa& nwa) {
    Nwa out = nwa;
    for (auto& slave : out.slaves) {
        const auto& b = slave.base;
        std::vector<std::string> names = b.state_names();
        std::set<std::string> used(names.begin(), names.end());
        std::vector<State> initials = b.initials();
        std::vector<State> accepting;
        std::vector<Transition> trans(b.transitions().begin(), b.transitions().end());
        std::vector<State> copy_of(b.num_states(), UINT32_MAX);
        for (State s : b.accepting_states()) {
            if (b.out(s).empty()) {
                accepting.push_back(s);
                continue;
            }
            std::string name = names[s] + "_acc";
            while (used.count(name)) name += "_";
            used.insert(name);
            copy_of[s] = static_cast<State>(names.size());
            names.push_back(name);
            accepting.push_back(copy_of[s]);
        }
        const std::size_t original = trans.size();
        for (std::size_t i = 0; i < original; ++i) {
            const auto t = trans[i];
            if (t.to < copy_of.size() && copy_of[t.to] != UINT32_MAX)
                trans.push_back({t.from, t.letter, copy_of[t.to], t.label});
        }
        for (State s : b.initials())
            if (s < copy_of.size() && copy_of[s] != UINT32_MAX) initials.push_back(copy_of[s]);
        slave.base = LabeledAutomaton(std::move(names), std::move(initials), std::move(accepting), std::move(trans));
    }
    return out;
}

std::string format_word(const Alphabet& sigma, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += sigma.name(w[i]);
    }
    return s;
}

std::string format_lasso(const Alphabet& sigma, const LassoWord& w) {
    std::string p = format_word(sigma, w.prefix);
    std::string u = format_word(sigma, w.period);
    return (p.empty() ? "" : p + " ") + "| " + u;
}

}  // namespace nwaq
