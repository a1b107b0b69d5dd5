#include "nwaq/reduce.hpp"

#include <deque>
#include <map>
#include <numeric>

#include "graph.hpp"
#include "nwaq/determinize.hpp"
#include "nwaq/width.hpp"

namespace nwaq {

namespace {

Weight step_total(const ConfigEdge& e) {
    Weight s = 0;
    for (auto w : e.slot_weights) s = checked_add(s, w);
    return s;
}

struct MasterKey {
    std::size_t node;
    std::uint32_t mask;  // slots invoked before the last reset
    bool f2;             // the mask emptied on the step into this state
    std::size_t pending;  // compound slave to invoke on the next letter
    bool idx;            // generalized Büchi index

    auto operator<=>(const MasterKey&) const = default;
};

}  // namespace

Nwa reduce_width1(const Nwa& nwa, std::size_t k) {
    auto det = is_deterministic(nwa);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    if (k == 0 || k > 31) throw PreconditionError("width bound out of range");
    const ConfigGraph g = explore_configurations(nwa, k);
    if (g.overflow_witness) throw PreconditionError("automaton does not have width " + std::to_string(k));

    std::map<std::pair<std::size_t, Weight>, std::uint32_t> slave_of;
    std::vector<std::pair<std::size_t, Weight>> slave_keys;
    auto compound = [&](std::size_t node, Weight carry) {
        auto [it, fresh] = slave_of.emplace(std::make_pair(node, carry), static_cast<std::uint32_t>(slave_keys.size()));
        if (fresh) slave_keys.emplace_back(node, carry);
        return it->second;
    };

    std::map<MasterKey, State> ids;
    std::vector<MasterKey> keys;
    auto intern = [&](const MasterKey& key) {
        auto [it, fresh] = ids.emplace(key, static_cast<State>(keys.size()));
        if (fresh) keys.push_back(key);
        return it->second;
    };
    intern(MasterKey{g.initial_nodes.at(0), 0, false, SIZE_MAX, false});

    struct Pending {
        State from;
        Letter letter;
        State to;
        std::size_t slave;  // SIZE_MAX for the dummy
    };
    std::vector<Pending> moves;
    for (State s = 0; s < keys.size(); ++s) {
        const MasterKey key = keys[s];
        const bool f1 = nwa.master.is_accepting(g.nodes[key.node].master);
        for (auto id : g.out[key.node]) {
            const auto& e = g.edges[id];
            std::uint32_t mask = 0;
            std::size_t pos = 0;
            for (std::uint32_t p = 0; p < e.step.from.slots.size(); ++p) {
                if (std::find(e.step.returned.begin(), e.step.returned.end(), p) != e.step.returned.end()) continue;
                if (key.mask >> p & 1u) mask |= 1u << pos;
                ++pos;
            }
            MasterKey next;
            next.node = e.to;
            next.f2 = mask == 0;
            next.mask = next.f2 ? (1u << e.step.to.slots.size()) - 1 : mask;
            next.pending = e.step.invokes() ? compound(e.to, step_total(e.step)) : SIZE_MAX;
            next.idx = key.idx ? !key.f2 : f1;
            moves.push_back({s, e.step.letter, intern(next), key.pending});
        }
    }

    const std::uint32_t dummy = static_cast<std::uint32_t>(slave_keys.size());
    std::vector<std::string> names;
    std::vector<State> accepting;
    for (State s = 0; s < keys.size(); ++s) {
        names.push_back("m" + std::to_string(s));
        if (!keys[s].idx && nwa.master.is_accepting(g.nodes[keys[s].node].master)) accepting.push_back(s);
    }
    std::vector<Transition> trans;
    for (const auto& m : moves)
        trans.push_back({m.from, m.letter, m.to, m.slave == SIZE_MAX ? dummy : static_cast<std::int64_t>(m.slave)});

    Nwa out;
    out.alphabet = nwa.alphabet;
    out.master = LabeledAutomaton(std::move(names), {0}, std::move(accepting), std::move(trans));

    // Compound slave: state 0 starts with the carried weight, state 1 accepts,
    // further states continue the simulation from a configuration.
    for (const auto& [start, carry] : slave_keys) {
        std::vector<std::string> snames{"start", "acc"};
        std::map<std::size_t, State> running;
        std::vector<std::size_t> todo;
        std::vector<Transition> st;
        auto run_state = [&](std::size_t node) {
            auto [it, fresh] = running.emplace(node, static_cast<State>(snames.size()));
            if (fresh) {
                snames.push_back("c" + std::to_string(node));
                todo.push_back(node);
            }
            return it->second;
        };
        auto expand = [&](State from, std::size_t node, Weight extra) {
            for (auto id : g.out[node]) {
                const auto& e = g.edges[id];
                if (e.step.invokes())
                    st.push_back({from, e.step.letter, 1, extra});
                else if (e.step.to.slots.empty())
                    st.push_back({from, e.step.letter, 1, checked_add(extra, step_total(e.step))});
                else
                    st.push_back({from, e.step.letter, run_state(e.to), checked_add(extra, step_total(e.step))});
            }
        };
        expand(0, start, carry);
        while (!todo.empty()) {
            const std::size_t node = todo.back();
            todo.pop_back();
            expand(running.at(node), node, 0);
        }
        out.slaves.push_back({LabeledAutomaton(std::move(snames), {0}, {1}, std::move(st)), ValueFn::Sum});
    }
    out.slaves.push_back({LabeledAutomaton({"d0"}, {0}, {0}, {}), ValueFn::Sum});
    return out;
}

namespace {

/// Runs of slave i started by the master on (q1, a), in the product with
/// the master restricted to silent invocations.
class SlaveRuns {
public:
    struct End {
        Value value;
        Word word;
    };

    SlaveRuns(const Nwa& nwa, State q1, Letter a) : nwa_(nwa) {
        auto mt = nwa.master.on(q1, a);
        if (mt.size() != 1) return;
        slave_ = static_cast<std::uint32_t>(mt[0].label);
        if (nwa.silent_slave(slave_)) return;
        const auto& b = nwa.slaves[slave_];
        auto st = b.base.on(b.base.initials().at(0), a);
        if (st.size() != 1) return;
        valid_ = true;
        first_ = a;
        intern({mt[0].to, st[0].to, nwa.master.is_accepting(mt[0].to)}, SIZE_MAX);
        const Weight w0 = b.effective(st[0].label);

        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            const Node here = nodes_[v];
            if (b.base.is_accepting(here.s)) continue;
            for (const auto& t : b.base.out(here.s))
                for (const auto& m : nwa.master.on(here.q, t.letter)) {
                    if (!nwa.silent_slave(static_cast<std::size_t>(m.label))) continue;
                    const std::size_t id = edges_.size();
                    edges_.push_back({v, 0, id});
                    letters_.push_back(t.letter);
                    weights_.push_back(b.effective(t.label));
                    edges_[id].v = intern({m.to, t.to, here.acc || nwa.master.is_accepting(m.to)}, id);
                }
        }

        // Bellman-Ford from the start node; nodes still improving after n
        // rounds, and everything they reach, have no minimum.
        const std::size_t n = nodes_.size();
        std::vector<std::optional<Weight>> dist(n);
        pred_.assign(n, SIZE_MAX);
        dist[0] = w0;
        for (std::size_t round = 0; round < n; ++round) {
            bool changed = false;
            for (const auto& e : edges_) {
                if (!dist[e.u]) continue;
                const Weight cand = checked_add(*dist[e.u], weights_[e.id]);
                if (!dist[e.v] || cand < *dist[e.v]) {
                    dist[e.v] = cand;
                    pred_[e.v] = e.id;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        std::vector<bool> unbounded(n, false);
        std::deque<std::size_t> work;
        for (const auto& e : edges_)
            if (dist[e.u] && checked_add(*dist[e.u], weights_[e.id]) < *dist[e.v] && !unbounded[e.v])
                unbounded[e.v] = true, work.push_back(e.v);
        std::vector<std::vector<std::size_t>> out(n);
        for (const auto& e : edges_) out[e.u].push_back(e.id);
        while (!work.empty()) {
            auto v = work.front();
            work.pop_front();
            for (auto id : out[v])
                if (!unbounded[edges_[id].v]) unbounded[edges_[id].v] = true, work.push_back(edges_[id].v);
        }

        for (std::size_t v = 0; v < n; ++v) {
            if (!b.base.is_accepting(nodes_[v].s)) continue;
            End end;
            if (unbounded[v]) {
                end.value = Value::neg_infinity();
                end.word = walk(bfs_, v);
            } else {
                end.value = Value::finite(*dist[v]);
                end.word = walk(pred_, v);
            }
            offer({nodes_[v].q, nodes_[v].acc}, end);
            if (nodes_[v].acc) offer({nodes_[v].q, false}, end);
        }
    }

    bool valid() const { return valid_; }
    std::uint32_t slave() const { return slave_; }
    /// Keyed by (q2, visits accepting); the false entry covers all runs.
    const std::map<std::pair<State, bool>, End>& ends() const { return ends_; }

private:
    struct Node {
        State q;
        State s;
        bool acc;
        auto operator<=>(const Node&) const = default;
    };

    std::size_t intern(const Node& x, std::size_t via) {
        auto [it, fresh] = index_.emplace(x, nodes_.size());
        if (fresh) {
            nodes_.push_back(x);
            bfs_.push_back(via);
        }
        return it->second;
    }

    Word walk(const std::vector<std::size_t>& parent, std::size_t v) const {
        Word w;
        for (std::size_t guard = 0; parent[v] != SIZE_MAX; ++guard) {
            if (guard > nodes_.size()) throw Error("predecessor walk does not reach the start");
            w.push_back(letters_[parent[v]]);
            v = edges_[parent[v]].u;
        }
        w.push_back(first_);
        return {w.rbegin(), w.rend()};
    }

    void offer(std::pair<State, bool> key, const End& e) {
        auto it = ends_.find(key);
        if (it == ends_.end() || e.value < it->second.value ||
            (e.value == it->second.value && e.word.size() < it->second.word.size()))
            ends_[key] = e;
    }

    const Nwa& nwa_;
    bool valid_ = false;
    std::uint32_t slave_ = 0;
    Letter first_ = 0;
    std::map<Node, std::size_t> index_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> bfs_;
    std::vector<std::size_t> pred_;
    std::vector<detail::LocalEdge> edges_;
    std::vector<Letter> letters_;
    std::vector<Weight> weights_;
    std::map<std::pair<State, bool>, End> ends_;
};

void require_width1_deterministic(const Nwa& nwa) {
    auto det = is_deterministic(nwa);
    if (!det.deterministic) throw NondeterministicInput(det.site);
}

}  // namespace

std::optional<SlaveValue> min_slave_value(const Nwa& nwa, State q1, Letter a, State q2, std::uint32_t i,
                                          bool visit_accepting) {
    require_width1_deterministic(nwa);
    SlaveRuns runs(nwa, q1, a);
    if (!runs.valid() || runs.slave() != i) return std::nullopt;
    auto it = runs.ends().find({q2, visit_accepting});
    if (it == runs.ends().end()) return std::nullopt;
    return SlaveValue{it->second.value, it->second.word};
}

Word FragmentAutomaton::expand(const std::vector<std::size_t>& edges) const {
    Word w;
    for (auto e : edges) {
        const auto& l = letters.at(edge_letter.at(e));
        w.insert(w.end(), l.word.begin(), l.word.end());
    }
    return w;
}

FragmentAutomaton fragment_automaton(const Nwa& nwa) {
    require_width1_deterministic(nwa);
    if (!has_width(nwa, 1).holds) throw PreconditionError("automaton does not have width 1");
    FragmentAutomaton fa;
    auto& g = fa.graph;
    const std::size_t nq = nwa.master.num_states();
    auto node = [&](State q, bool silent, bool acc) { return (q * 2 + silent) * 2 + acc; };
    for (std::size_t v = 0; v < nq * 4; ++v) g.add_node(v % 2 == 1);
    g.initial.push_back(node(nwa.master.initials().at(0), false, false));

    std::vector<bool> neg(0);
    auto add_letter = [&](FragmentLetter l) {
        const std::size_t id = fa.letters.size();
        const bool unbounded = l.weight.tag() == Value::Tag::NegInfinity;
        const Weight cost = l.weight.is_finite() ? l.weight.rational().convert_to<Weight>() : 0;
        for (int silent = 0; silent < 2; ++silent) {
            if (l.silent && silent) continue;  // no two silent letters in a row
            for (int acc = 0; acc < 2; ++acc) {
                g.add_edge(node(l.q1, silent, acc), node(l.q2, l.silent, l.visits_accepting), cost, l.silent ? 0 : 1);
                fa.edge_letter.push_back(id);
                neg.push_back(unbounded);
            }
        }
        fa.letters.push_back(std::move(l));
    };

    for (State q1 = 0; q1 < nq; ++q1) {
        for (Letter a = 0; a < nwa.alphabet.size(); ++a) {
            SlaveRuns runs(nwa, q1, a);
            if (!runs.valid()) continue;
            for (const auto& [key, end] : runs.ends()) {
                FragmentLetter l;
                l.q1 = q1;
                l.q2 = key.first;
                l.a = a;
                l.slave = runs.slave();
                l.visits_accepting = key.second;
                l.weight = end.value;
                l.word = end.word;
                add_letter(std::move(l));
            }
        }
        // Nonempty silent master paths from q1, tracking accepting visits.
        std::map<std::pair<State, bool>, std::pair<std::pair<State, bool>, Letter>> via;
        std::deque<std::pair<State, bool>> work;
        auto step_from = [&](std::pair<State, bool> from) {
            for (const auto& t : nwa.master.out(from.first)) {
                if (!nwa.silent_slave(static_cast<std::size_t>(t.label))) continue;
                std::pair<State, bool> to{t.to, from.second || nwa.master.is_accepting(t.to)};
                if (via.emplace(to, std::make_pair(from, t.letter)).second) work.push_back(to);
            }
        };
        const std::pair<State, bool> origin{q1, false};
        step_from(origin);
        while (!work.empty()) {
            auto x = work.front();
            work.pop_front();
            step_from(x);
        }
        for (const auto& [to, unused] : via) {
            FragmentLetter l;
            l.silent = true;
            l.q1 = q1;
            l.q2 = to.first;
            l.visits_accepting = to.second;
            auto x = to;
            do {
                const auto& [from, letter] = via.at(x);
                l.word.push_back(letter);
                x = from;
            } while (x != origin && l.word.size() <= via.size());
            std::reverse(l.word.begin(), l.word.end());
            add_letter(std::move(l));
        }
    }

    // Unbounded fragments are harmless unless they can repeat on an accepting cycle.
    std::vector<std::vector<std::size_t>> adj(g.num_nodes);
    for (const auto& e : g.edges) adj[e.from].push_back(e.to);
    auto comp = detail::strongly_connected(g.num_nodes, adj, std::vector<bool>(g.num_nodes, true));
    std::vector<bool> accepting(g.num_nodes, false), ticked(g.num_nodes, false);
    for (std::size_t v = 0; v < g.num_nodes; ++v)
        if (g.accepting[v]) accepting[comp[v]] = true;
    for (const auto& e : g.edges)
        if (comp[e.from] == comp[e.to] && e.ticks) ticked[comp[e.from]] = true;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (neg[i] && comp[e.from] == comp[e.to] && accepting[comp[e.from]] && ticked[comp[e.from]]) {
            const auto& l = fa.letters[fa.edge_letter[i]];
            throw NegInfinityFragment("(" + nwa.master.state_name(l.q1) + ", " + nwa.alphabet.name(l.a) + ", " +
                                      nwa.master.state_name(l.q2) + ", " + std::to_string(l.slave + 1) + ")");
        }
    }
    return fa;
}

}  // namespace nwaq
