#include "nwaq/determinize.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace nwaq {

std::string format_configuration(const Nwa& nwa, const Configuration& c) {
    std::string s = "(" + nwa.master.state_name(c.master) + ";";
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
        const auto& slot = c.slots[i];
        s += (i ? ", " : " ") + std::to_string(slot.slave + 1) + ":" +
             nwa.slaves[slot.slave].base.state_name(slot.state);
    }
    return s + ")";
}

std::vector<Configuration> config_initials(const Nwa& nwa) {
    std::vector<Configuration> out;
    for (State q : nwa.master.initials()) out.push_back(Configuration{q, {}});
    return out;
}

std::vector<ConfigEdge> config_successors(const Nwa& nwa, const Configuration& c, Letter a, std::size_t k) {
    std::vector<ConfigEdge> out;
    std::vector<std::uint32_t> returned;
    std::vector<std::uint32_t> survivors;
    for (std::uint32_t p = 0; p < c.slots.size(); ++p) {
        const auto& slot = c.slots[p];
        if (nwa.slaves[slot.slave].base.is_accepting(slot.state))
            returned.push_back(p);
        else
            survivors.push_back(p);
    }
    std::vector<std::span<const Transition>> options;
    for (auto p : survivors) {
        const auto& slot = c.slots[p];
        auto tr = nwa.slaves[slot.slave].base.on(slot.state, a);
        if (tr.empty()) return out;
        options.push_back(tr);
    }

    for (const auto& mt : nwa.master.on(c.master, a)) {
        const auto slave = static_cast<std::uint32_t>(mt.label);
        const auto& b = nwa.slaves[slave].base;
        // nullptr stands for the silent empty-word run of the invoked slave.
        std::vector<const Transition*> fresh;
        bool silent = false;
        for (State s0 : b.initials()) {
            if (b.is_accepting(s0)) {
                silent = true;
                continue;
            }
            for (const auto& t : b.on(s0, a)) fresh.push_back(&t);
        }
        if (silent) fresh.insert(fresh.begin(), nullptr);

        const std::uint32_t master_choice = static_cast<std::uint32_t>(&mt - nwa.master.transitions().data());
        for (const Transition* nt : fresh) {
            std::vector<std::size_t> digit(options.size(), 0);
            while (true) {
                ConfigEdge e;
                e.from = c;
                e.letter = a;
                e.to.master = mt.to;
                e.returned = returned;
                e.master_accepting = nwa.master.is_accepting(mt.to);
                e.all_terminated_bit = survivors.empty();
                e.master_choice = master_choice;
                for (std::size_t i = 0; i < survivors.size(); ++i) {
                    const auto& slot = c.slots[survivors[i]];
                    const auto& sb = nwa.slaves[slot.slave];
                    const Transition& t = options[i][digit[i]];
                    e.to.slots.push_back({slot.slave, t.to});
                    e.slot_weights.push_back(sb.effective(t.label));
                    e.slot_choices.push_back(static_cast<std::uint32_t>(&t - sb.base.transitions().data()));
                }
                if (nt) {
                    const auto& sb = nwa.slaves[slave];
                    e.invoked = slave;
                    e.to.slots.push_back({slave, nt->to});
                    e.slot_weights.push_back(sb.effective(nt->label));
                    e.slot_choices.push_back(static_cast<std::uint32_t>(nt - sb.base.transitions().data()));
                }
                e.overflow = e.to.slots.size() > k;
                out.push_back(std::move(e));

                std::size_t i = 0;
                while (i < digit.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
                if (i == digit.size()) break;
            }
        }
    }
    return out;
}

Nwa exploration_view(const Nwa& nwa) {
    if (is_deterministic(nwa).deterministic) return nwa;
    return normalize_slaves(nwa);
}

Word ConfigGraph::path_letters(std::size_t node) const {
    Word w;
    for (std::size_t e : path_edges(node)) w.push_back(edges[e].step.letter);
    return w;
}

std::vector<std::size_t> ConfigGraph::path_edges(std::size_t node) const {
    std::vector<std::size_t> path;
    while (parent[node] != SIZE_MAX) {
        path.push_back(parent[node]);
        node = edges[parent[node]].from;
    }
    return {path.rbegin(), path.rend()};
}

ConfigGraph explore_configurations(const Nwa& nwa, std::size_t k, std::size_t cap) {
    ConfigGraph g;
    std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
    auto intern = [&](const Configuration& c, std::size_t via) {
        auto [it, fresh] = index.emplace(c, g.nodes.size());
        if (fresh) {
            if (g.nodes.size() >= cap) throw CapExceeded(cap);
            g.nodes.push_back(c);
            g.out.emplace_back();
            g.parent.push_back(via);
        }
        return it->second;
    };
    for (const auto& c : config_initials(nwa)) g.initial_nodes.push_back(intern(c, SIZE_MAX));
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        for (Letter a = 0; a < nwa.alphabet.size(); ++a) {
            const Configuration here = g.nodes[n];
            for (auto& step : config_successors(nwa, here, a, k)) {
                if (step.overflow) {
                    if (!g.overflow_witness) {
                        Word w = g.path_letters(n);
                        w.push_back(a);
                        g.overflow_witness = std::move(w);
                    }
                    continue;
                }
                const std::size_t id = g.edges.size();
                const std::size_t to = intern(step.to, id);
                g.edges.push_back({n, to, std::move(step)});
                g.out[n].push_back(id);
            }
        }
    }
    return g;
}

ConfigurationCount count_configurations(const Nwa& nwa, std::size_t k) {
    ConfigurationCount r;
    r.reachable = explore_configurations(exploration_view(nwa), k).nodes.size();
    std::size_t slave_states = 0;
    for (const auto& b : nwa.slaves) slave_states += b.base.num_states();
    r.syntactic_bound = BigInt(nwa.master.num_states()) * boost::multiprecision::pow(BigInt(slave_states + 1), static_cast<unsigned>(k));
    return r;
}

Materialized materialize_deterministic(const Nwa& input, std::size_t k, std::size_t cap) {
    const Nwa nwa = exploration_view(input);
    Materialized m;
    m.graph = explore_configurations(nwa, k, cap);
    const auto& g = m.graph;
    if (g.overflow_witness) throw WidthExceeded(g.overflow_witness->size() - 1);

    std::vector<std::string> letters;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        letters.push_back(nwa.alphabet.name(g.edges[e].step.letter) + "_" + std::to_string(e));
        m.projection.push_back(g.edges[e].step.letter);
    }

    // Only slaves that some reachable step opens get a counterpart.
    std::map<std::uint32_t, std::uint32_t> slave_id;
    for (const auto& e : g.edges)
        if (e.step.invokes()) slave_id.emplace(e.step.invoked, 0);
    std::uint32_t next = 0;
    for (auto& [orig, id] : slave_id) id = next++;
    const std::uint32_t dummy = next;

    // Slave states are (original state, slot position); state 0 is the fresh start.
    struct Builder {
        std::vector<std::string> names{"init"};
        std::map<std::pair<State, std::size_t>, State> ids;
        std::vector<State> accepting;
        std::vector<Transition> trans;
    };
    std::vector<Builder> builders(slave_id.size());
    auto state_of = [&](std::uint32_t orig, State s, std::size_t pos) {
        auto& b = builders[slave_id.at(orig)];
        auto [it, fresh] = b.ids.emplace(std::make_pair(s, pos), static_cast<State>(b.names.size()));
        if (fresh) {
            const auto& base = nwa.slaves[orig].base;
            b.names.push_back(base.state_name(s) + "_" + std::to_string(pos + 1));
            if (base.is_accepting(s)) b.accepting.push_back(it->second);
        }
        return it->second;
    };

    std::vector<std::string> master_names;
    std::vector<State> master_accepting;
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        master_names.push_back("c" + std::to_string(n));
        if (nwa.master.is_accepting(g.nodes[n].master)) master_accepting.push_back(static_cast<State>(n));
    }
    std::vector<Transition> master_trans;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        const auto& st = edge.step;
        const Letter x = static_cast<Letter>(e);
        master_trans.push_back({static_cast<State>(edge.from), x, static_cast<State>(edge.to),
                                st.invokes() ? slave_id.at(st.invoked) : dummy});
        std::size_t pos = 0;
        for (std::uint32_t p = 0; p < st.from.slots.size(); ++p) {
            if (std::find(st.returned.begin(), st.returned.end(), p) != st.returned.end()) continue;
            const auto& slot = st.from.slots[p];
            const State src = state_of(slot.slave, slot.state, p);
            const State dst = state_of(slot.slave, st.to.slots[pos].state, pos);
            builders[slave_id.at(slot.slave)].trans.push_back({src, x, dst, st.slot_weights[pos]});
            ++pos;
        }
        if (st.invokes()) {
            const State dst = state_of(st.invoked, st.to.slots[pos].state, pos);
            builders[slave_id.at(st.invoked)].trans.push_back({0, x, dst, st.slot_weights[pos]});
        }
    }

    m.nwa.alphabet = Alphabet(std::move(letters));
    std::vector<State> inits;
    if (g.initial_nodes.size() == 1) {
        inits.push_back(static_cast<State>(g.initial_nodes[0]));
    } else {
        // Several initial configurations: a fresh start state copies their
        // outgoing steps. Extended letters name their source, so this stays
        // deterministic.
        const State start = static_cast<State>(master_names.size());
        master_names.push_back("init");
        inits.push_back(start);
        std::vector<Transition> extra;
        for (auto n : g.initial_nodes) {
            if (nwa.master.is_accepting(g.nodes[n].master)) master_accepting.push_back(start);
            for (const auto& t : master_trans)
                if (t.from == n) extra.push_back({start, t.letter, t.to, t.label});
        }
        master_trans.insert(master_trans.end(), extra.begin(), extra.end());
    }
    m.nwa.master = LabeledAutomaton(std::move(master_names), std::move(inits), std::move(master_accepting),
                                    std::move(master_trans));
    for (auto& b : builders) {
        m.nwa.slaves.push_back({LabeledAutomaton(std::move(b.names), {0}, std::move(b.accepting), std::move(b.trans)),
                                ValueFn::Sum});
    }
    m.nwa.slaves.push_back({LabeledAutomaton({"d0"}, {0}, {0}, {}), ValueFn::Sum});
    return m;
}

}  // namespace nwaq
