#pragma once

// Random instance generators and brute-force reference implementations
// shared by the unit, property and acceptance suites.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nwaq/mca.hpp"
#include "nwaq/meanpayoff.hpp"
#include "nwaq/oracle.hpp"

namespace nwaq::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Weight pick_weight(Rng& rng, Weight lo, Weight hi) {
    return std::uniform_int_distribution<Weight>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Alphabet letters(std::size_t n) {
    static const char* names[] = {"a", "b", "c", "d", "e", "f"};
    std::vector<std::string> v(names, names + n);
    return Alphabet(std::move(v));
}

inline std::vector<std::string> state_names(const std::string& stem, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

struct NwaShape {
    std::size_t max_master = 3;
    std::size_t max_letters = 2;
    std::size_t max_slaves = 2;
    std::size_t max_slave_states = 3;
    Weight max_weight = 3;
    bool deterministic = true;
    /// Probability that a (state, letter) pair has a transition.
    double density = 0.85;
    double master_density = 0.85;
    /// Probability that a master transition invokes the dummy slave.
    double dummy = 0.0;
    /// Slave transitions only move to higher states, so every slave run is short.
    bool acyclic_slaves = false;
};

/// Slave whose accepting states are sinks when deterministic. The initial
/// state is accepting (a silent slave) with small probability.
inline WeightedAutomaton random_slave(Rng& rng, const NwaShape& s, std::size_t sigma) {
    const std::size_t n = pick(rng, 1, s.max_slave_states);
    std::vector<State> accepting;
    for (State q = 1; q < n; ++q)
        if (coin(rng, 0.5)) accepting.push_back(q);
    if (n > 1 && accepting.empty()) accepting.push_back(static_cast<State>(n - 1));
    if (n == 1 || coin(rng, 0.1)) accepting.push_back(0);
    auto acc = [&](State q) { return std::find(accepting.begin(), accepting.end(), q) != accepting.end(); };
    std::vector<Transition> trans;
    for (State q = 0; q < n; ++q) {
        if (s.deterministic && acc(q)) continue;
        for (Letter a = 0; a < sigma; ++a) {
            const std::size_t count = coin(rng, s.density) ? (s.deterministic ? 1 : pick(rng, 1, 2)) : 0;
            for (std::size_t c = 0; c < count; ++c) {
                if (s.acyclic_slaves && q + 1 == n) break;
                const auto to = static_cast<State>(s.acyclic_slaves ? pick(rng, q + 1, n - 1) : pick(rng, 0, n - 1));
                trans.push_back({q, a, to, pick_weight(rng, -s.max_weight, s.max_weight)});
            }
        }
    }
    WeightedAutomaton w;
    w.base = LabeledAutomaton(state_names("s", n), {0}, accepting, std::move(trans));
    w.value_fn = coin(rng, 0.25) ? ValueFn::SumPlus : ValueFn::Sum;
    return w;
}

/// Random NWA whose last slave is the dummy.
inline Nwa random_nwa(Rng& rng, const NwaShape& s = {}) {
    Nwa nwa;
    const std::size_t sigma = pick(rng, 1, s.max_letters);
    nwa.alphabet = letters(sigma);
    const std::size_t slaves = pick(rng, 1, s.max_slaves);
    for (std::size_t i = 0; i < slaves; ++i) nwa.slaves.push_back(random_slave(rng, s, sigma));
    WeightedAutomaton dummy;
    dummy.base = LabeledAutomaton({"d0"}, {0}, {0}, {});
    nwa.slaves.push_back(dummy);

    const std::size_t n = pick(rng, 1, s.max_master);
    std::vector<State> accepting;
    for (State q = 0; q < n; ++q)
        if (coin(rng, 0.5)) accepting.push_back(q);
    if (accepting.empty()) accepting.push_back(static_cast<State>(pick(rng, 0, n - 1)));
    std::vector<Transition> trans;
    for (State q = 0; q < n; ++q)
        for (Letter a = 0; a < sigma; ++a) {
            const std::size_t count = coin(rng, s.master_density) ? (s.deterministic ? 1 : pick(rng, 1, 2)) : 0;
            for (std::size_t c = 0; c < count; ++c) {
                const std::size_t slave = coin(rng, s.dummy) ? nwa.slaves.size() - 1 : pick(rng, 0, nwa.slaves.size() - 1);
                trans.push_back({q, a, static_cast<State>(pick(rng, 0, n - 1)), static_cast<std::int64_t>(slave)});
            }
        }
    std::vector<State> initials{0};
    if (!s.deterministic && n > 1 && coin(rng, 0.3)) initials.push_back(1);
    nwa.master = LabeledAutomaton(state_names("q", n), initials, accepting, std::move(trans));
    return nwa;
}

inline Word random_word(Rng& rng, std::size_t sigma, std::size_t lo, std::size_t hi) {
    Word w(pick(rng, lo, hi));
    for (auto& a : w) a = static_cast<Letter>(pick(rng, 0, sigma - 1));
    return w;
}

inline LassoWord random_lasso(Rng& rng, std::size_t sigma, std::size_t max_prefix, std::size_t max_period) {
    return LassoWord{random_word(rng, sigma, 0, max_prefix), random_word(rng, sigma, 1, max_period)};
}

/// Random deterministic MCA. Counters follow a legal discipline per state
/// so that every transition is well formed.
inline Mca random_mca(Rng& rng, std::size_t max_states = 3, std::size_t max_counters = 2) {
    Mca m;
    const std::size_t sigma = pick(rng, 1, 2);
    m.alphabet = letters(sigma);
    const std::size_t n = pick(rng, 1, max_states);
    m.states = state_names("p", n);
    m.initials = {0};
    for (State q = 0; q < n; ++q)
        if (coin(rng, 0.5)) m.accepting.push_back(q);
    if (m.accepting.empty()) m.accepting.push_back(0);
    m.n_counters = pick(rng, 1, max_counters);
    // Each state fixes which counters are active on arrival; state 0 has none.
    std::vector<std::vector<bool>> active(n, std::vector<bool>(m.n_counters, false));
    for (State q = 1; q < n; ++q)
        for (auto&& b : active[q]) b = coin(rng, 0.5);
    for (State q = 0; q < n; ++q)
        for (Letter a = 0; a < sigma; ++a) {
            if (!coin(rng, 0.9)) continue;
            const auto to = static_cast<State>(pick(rng, 0, n - 1));
            McaTransition t{q, a, to, {}};
            bool started = false;
            bool ok = true;
            for (std::size_t c = 0; c < m.n_counters; ++c) {
                const bool before = active[q][c], after = active[to][c];
                if (before && after) {
                    t.ops.push_back(Instruction::add(pick_weight(rng, -2, 2)));
                } else if (before && !after) {
                    t.ops.push_back(Instruction::terminate());
                } else if (!before && after) {
                    if (started) ok = false;
                    started = true;
                    t.ops.push_back(Instruction::start());
                } else {
                    t.ops.push_back(Instruction::idle());
                }
            }
            if (ok) m.transitions.push_back(std::move(t));
        }
    return m;
}

struct GraphShape {
    std::size_t max_nodes = 8;
    std::size_t max_edges = 16;
    Weight max_cost = 8;
    double silent = 0.0;
};

inline RatioGraph random_ratio_graph(Rng& rng, const GraphShape& s = {}) {
    RatioGraph g;
    const std::size_t n = pick(rng, 1, s.max_nodes);
    for (std::size_t v = 0; v < n; ++v) g.add_node(coin(rng, 0.4));
    g.initial.push_back(0);
    const std::size_t m = pick(rng, 1, s.max_edges);
    for (std::size_t i = 0; i < m; ++i) {
        const bool silent = coin(rng, s.silent);
        g.add_edge(pick(rng, 0, n - 1), pick(rng, 0, n - 1), silent ? 0 : pick_weight(rng, -s.max_cost, s.max_cost),
                   silent ? 0 : 1);
    }
    return g;
}

/// Infimum ratio by enumerating every simple cycle: a cycle counts if it
/// has a tick and its nodes share a reachable component with an accepting
/// node.
inline Value brute_infimum_ratio(const RatioGraph& g) {
    const std::size_t n = g.num_nodes;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges) reach[e.from][e.to] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<bool> reachable(n, false);
    for (auto s : g.initial) {
        reachable[s] = true;
        for (std::size_t v = 0; v < n; ++v)
            if (reach[s][v]) reachable[v] = true;
    }
    auto component_accepts = [&](std::size_t v) {
        for (std::size_t u = 0; u < n; ++u)
            if (g.accepting[u] && (u == v || (reach[u][v] && reach[v][u]))) return true;
        return false;
    };

    std::optional<Rational> best;
    std::vector<bool> on_path(n, false);
    std::function<void(std::size_t, std::size_t, Weight, int)> dfs = [&](std::size_t start, std::size_t v, Weight cost,
                                                                         int ticks) {
        for (const auto& e : g.edges) {
            if (e.from != v || e.to < start) continue;
            if (e.to == start) {
                const int t = ticks + e.ticks;
                if (t > 0 && reachable[start] && component_accepts(start)) {
                    Rational r(cost + e.cost, t);
                    if (!best || r < *best) best = r;
                }
            } else if (!on_path[e.to]) {
                on_path[e.to] = true;
                dfs(start, e.to, cost + e.cost, ticks + e.ticks);
                on_path[e.to] = false;
            }
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        on_path[s] = true;
        dfs(s, s, 0, 0);
        on_path[s] = false;
    }
    return best ? Value::finite(*best) : Value::plus_infinity();
}

/// Lasso value of a deterministic NWA by unrolling the word with trace_run
/// until the configuration at period boundaries repeats. Independent of
/// the configuration-graph evaluator.
inline Value unrolled_lasso_value(const Nwa& nwa, const LassoWord& w, std::size_t cap) {
    const std::size_t pre = w.prefix.size(), len = w.period.size();
    std::size_t rounds = 16;
    for (;;) {
        Word word = w.prefix;
        for (std::size_t r = 0; r < rounds; ++r) word.insert(word.end(), w.period.begin(), w.period.end());
        const RunTrace t = trace_run(nwa, word, cap);
        if (!t.complete) return Value::plus_infinity();
        std::size_t i = 0, j = 0;
        bool found = false;
        for (j = 1; j < rounds && !found; ++j)
            for (i = 0; i < j; ++i)
                if (t.records[pre + i * len].before == t.records[pre + j * len].before) {
                    found = true;
                    break;
                }
        --j;
        // A slot that outlives cap + 2 repetitions of the cycle never returns.
        if (!found || j + (j - i) * (cap + 2) >= rounds) {
            rounds *= 2;
            if (rounds > 4096) throw Error("unrolling did not stabilize");
            continue;
        }
        std::map<std::size_t, MaybeWeight> value;
        for (const auto& rec : t.records)
            for (const auto& [p, v] : rec.returned) value[p] = v;
        for (const auto& [p, v] : t.returned_at_end) value[p] = v;
        const std::size_t lo = pre + i * len, hi = pre + j * len;
        bool accepting = false;
        BigInt sum = 0;
        std::size_t count = 0;
        // Every slave invoked so far has to terminate, prefix ones included.
        for (std::size_t p = 0; p < hi; ++p) {
            if (p >= lo) accepting = accepting || nwa.master.is_accepting(t.records[p].before.master);
            if (t.records[p].invoked == kNoSlave) continue;
            auto it = value.find(p);
            if (it == value.end() || !it->second) return Value::plus_infinity();
            if (p < lo) continue;
            sum += *it->second;
            ++count;
        }
        if (!accepting || count == 0) return Value::plus_infinity();
        return Value::finite(Rational(sum, BigInt(count)));
    }
}

}  // namespace nwaq::testing
