#include "nwaq/corpus.hpp"

#include <map>

namespace nwaq::corpus {

namespace {

/// Builds a labeled automaton from state names and (from, letter, to, label) rows.
class Builder {
public:
    Builder(const Alphabet& sigma, std::vector<std::string> states) : sigma_(sigma), names_(std::move(states)) {
        for (State s = 0; s < names_.size(); ++s) ids_[names_[s]] = s;
    }

    Builder& initial(const std::string& s) {
        initials_.push_back(ids_.at(s));
        return *this;
    }
    Builder& accepting(const std::string& s) {
        accepting_.push_back(ids_.at(s));
        return *this;
    }
    Builder& trans(const std::string& from, const std::string& a, const std::string& to, std::int64_t label) {
        trans_.push_back({ids_.at(from), *sigma_.find(a), ids_.at(to), label});
        return *this;
    }

    LabeledAutomaton build() const { return LabeledAutomaton(names_, initials_, accepting_, trans_); }

private:
    const Alphabet& sigma_;
    std::vector<std::string> names_;
    std::map<std::string, State> ids_;
    std::vector<State> initials_;
    std::vector<State> accepting_;
    std::vector<Transition> trans_;
};

WeightedAutomaton dummy() { return {LabeledAutomaton({"d0"}, {0}, {0}, {}), ValueFn::Sum}; }

/// Sum⁺ slave counting letters until `grant`, which itself weighs 0.
WeightedAutomaton response_time(const Alphabet& sigma, const std::string& grant) {
    Builder b(sigma, {"s0", "s1"});
    b.initial("s0").accepting("s1");
    for (const auto& a : sigma.letters()) {
        if (a == grant)
            b.trans("s0", a, "s1", 0);
        else
            b.trans("s0", a, "s0", 1);
    }
    return {b.build(), ValueFn::SumPlus};
}

}  // namespace

Nwa art() {
    Nwa n;
    n.alphabet = Alphabet({"r", "g", "hash"});
    Builder m(n.alphabet, {"q0"});
    m.initial("q0").accepting("q0").trans("q0", "r", "q0", 0).trans("q0", "g", "q0", 1).trans("q0", "hash", "q0", 1);
    n.master = m.build();
    n.slaves = {response_time(n.alphabet, "g"), dummy()};
    return n;
}

Nwa art_one() {
    Nwa n;
    n.alphabet = Alphabet({"r", "g", "hash"});
    Builder m(n.alphabet, {"init", "p1", "p2"});
    m.initial("init").accepting("p2");
    m.trans("init", "r", "p1", 0).trans("p1", "hash", "p1", 1).trans("p1", "g", "p2", 1);
    m.trans("p2", "hash", "p2", 1).trans("p2", "r", "p1", 0);
    n.master = m.build();
    n.slaves = {response_time(n.alphabet, "g"), dummy()};
    return n;
}

Nwa k_art(std::size_t k) {
    Nwa n;
    n.alphabet = Alphabet({"r", "g", "hash"});
    std::vector<std::string> names;
    for (std::size_t j = 0; j <= k; ++j) names.push_back("c" + std::to_string(j));
    Builder m(n.alphabet, names);
    m.initial("c0").accepting("c0");
    for (std::size_t j = 0; j <= k; ++j) {
        m.trans(names[j], "hash", names[j], 1);
        if (j < k) m.trans(names[j], "r", names[j + 1], 0);
        if (j > 0) m.trans(names[j], "g", names[0], 1);
    }
    n.master = m.build();
    n.slaves = {response_time(n.alphabet, "g"), dummy()};
    return n;
}

Nwa art_one_typed(std::size_t k) {
    Nwa n;
    std::vector<std::string> letters;
    for (std::size_t i = 1; i <= k; ++i) {
        letters.push_back("r" + std::to_string(i));
        letters.push_back("g" + std::to_string(i));
    }
    letters.push_back("hash");
    n.alphabet = Alphabet(letters);
    // Master state = set of request types awaiting their grant.
    std::vector<std::string> names;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::string s = "p";
        for (std::size_t i = 0; i < k; ++i) s += (mask >> i & 1) ? '1' : '0';
        names.push_back(s);
    }
    Builder m(n.alphabet, names);
    m.initial(names[0]);
    for (std::size_t mask = 0; mask < names.size(); ++mask) {
        m.accepting(names[mask]);
        m.trans(names[mask], "hash", names[mask], static_cast<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            const auto r = "r" + std::to_string(i + 1), g = "g" + std::to_string(i + 1);
            if (!(mask & bit)) m.trans(names[mask], r, names[mask | bit], static_cast<std::int64_t>(i));
            m.trans(names[mask], g, names[mask & ~bit], static_cast<std::int64_t>(k));
        }
    }
    n.master = m.build();
    for (std::size_t i = 1; i <= k; ++i) n.slaves.push_back(response_time(n.alphabet, "g" + std::to_string(i)));
    n.slaves.push_back(dummy());
    return n;
}

Nwa average_excess() {
    Nwa n;
    n.alphabet = Alphabet({"r", "g", "hash", "dollar"});
    // q0 before the first dollar, q1 at the start of a block, q2 inside one.
    Builder m(n.alphabet, {"q0", "q1", "q2"});
    m.initial("q0").accepting("q1");
    for (const char* a : {"r", "g", "hash"}) {
        m.trans("q0", a, "q0", 1);
        m.trans("q1", a, "q2", 0);
        m.trans("q2", a, "q2", 1);
    }
    m.trans("q0", "dollar", "q1", 1).trans("q1", "dollar", "q1", 0).trans("q2", "dollar", "q1", 1);
    n.master = m.build();
    Builder b(n.alphabet, {"s0", "s1", "s2"});
    b.initial("s0").accepting("s2");
    for (const char* s : {"s0", "s1"}) {
        b.trans(s, "r", "s1", 1).trans(s, "g", "s1", -1).trans(s, "hash", "s1", 0).trans(s, "dollar", "s2", 0);
    }
    n.slaves = {{b.build(), ValueFn::Sum}, dummy()};
    return n;
}

Nwa cond_motivation(bool swapped) {
    Nwa n;
    n.alphabet = Alphabet({"one", "two", "a", "hash"});
    Builder m(n.alphabet, {"m0", "m1", "m2"});
    m.initial("m0").accepting("m0");
    if (swapped)
        m.trans("m0", "two", "m1", 1).trans("m1", "one", "m2", 0);
    else
        m.trans("m0", "one", "m1", 0).trans("m1", "two", "m2", 1);
    m.trans("m2", "a", "m2", 2).trans("m2", "hash", "m0", 2);
    n.master = m.build();
    for (std::int64_t step : {1, -1}) {
        Builder b(n.alphabet, {"s0", "s1", "s2"});
        b.initial("s0").accepting("s2");
        b.trans("s0", "one", "s1", 0).trans("s0", "two", "s1", 0);
        b.trans("s1", "one", "s1", 0).trans("s1", "two", "s1", 0).trans("s1", "a", "s1", step);
        b.trans("s1", "hash", "s2", 0);
        n.slaves.push_back({b.build(), ValueFn::Sum});
    }
    n.slaves.push_back(dummy());
    return n;
}

Mca one_counter() {
    Mca m;
    m.alphabet = Alphabet({"a", "hash"});
    m.states = {"p0", "p1"};
    m.initials = {0};
    m.accepting = {0};
    m.n_counters = 1;
    const Letter a = 0, hash = 1;
    m.transitions = {
        {0, a, 0, {Instruction::idle()}},
        {0, hash, 1, {Instruction::start()}},
        {1, a, 1, {Instruction::add(1)}},
        {1, hash, 0, {Instruction::terminate()}},
    };
    return m;
}

std::vector<Entry> all() {
    return {
        {"art", art()},
        {"art1", art_one()},
        {"kart2", k_art(2)},
        {"kart3", k_art(3)},
        {"art1k2", art_one_typed(2)},
        {"art1k3", art_one_typed(3)},
        {"ae", average_excess()},
        {"cond1", cond_motivation(false)},
        {"cond2", cond_motivation(true)},
        {"counter1", one_counter()},
    };
}

}  // namespace nwaq::corpus
