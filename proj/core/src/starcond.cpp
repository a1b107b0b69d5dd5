#include "nwaq/starcond.hpp"

#include <algorithm>
#include <deque>

#include "graph.hpp"

namespace nwaq {

Weight StarWitness::recompute_j_sum() const {
    Weight s = 0;
    for (const auto& e : cycle)
        for (std::size_t p = 0; p < j; ++p) s = checked_add(s, e.slot_weights.at(p));
    return s;
}

LassoWord StarWitness::pumped(std::size_t m) const {
    LassoWord w;
    for (const auto& e : prefix) w.prefix.push_back(e.letter);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& e : cycle) w.period.push_back(e.letter);
    for (const auto& e : closing) w.period.push_back(e.letter);
    return w;
}

namespace {

bool keeps_first_slots(const ConfigEdge& e, std::size_t j) {
    if (e.from.slots.size() < j) return false;
    for (auto p : e.returned)
        if (p < j) return false;
    return true;
}

}  // namespace

std::optional<StarWitness> check_star_condition(const Nwa& input, std::size_t k) {
    const Nwa nwa = exploration_view(input);
    std::optional<Weight> min_weight;
    for (const auto& b : nwa.slaves)
        for (const auto& t : b.base.transitions()) {
            const Weight w = b.effective(t.label);
            if (!min_weight || w < *min_weight) min_weight = w;
        }
    if (!min_weight || *min_weight >= 0) return std::nullopt;

    const ConfigGraph g = explore_configurations(nwa, k);
    if (g.overflow_witness) throw PreconditionError("automaton does not have width " + std::to_string(k));

    const std::size_t n = g.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges) adj[e.from].push_back(e.to);
    const auto comp = detail::strongly_connected(n, adj, std::vector<bool>(n, true));

    // Components in discovery order of their first node.
    std::vector<std::size_t> order;
    std::vector<bool> listed(n, false), accepting(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (!listed[comp[v]]) listed[comp[v]] = true, order.push_back(comp[v]);
        if (nwa.master.is_accepting(g.nodes[v].master)) accepting[comp[v]] = true;
    }

    for (std::size_t j = 1; j <= k; ++j) {
        for (auto c : order) {
            if (!accepting[c]) continue;
            std::vector<std::size_t> local(n, SIZE_MAX);
            std::size_t size = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (comp[v] == c) local[v] = size++;
            std::vector<detail::LocalEdge> edges;
            std::vector<__int128> weights;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                const auto& e = g.edges[i];
                if (comp[e.from] != c || comp[e.to] != c || !keeps_first_slots(e.step, j)) continue;
                __int128 w = 0;
                for (std::size_t p = 0; p < j; ++p) w += e.step.slot_weights[p];
                edges.push_back({local[e.from], local[e.to], i});
                weights.push_back(w);
            }
            auto neg = detail::find_negative_cycle<__int128>(size, edges, weights);
            if (neg.cycle.empty()) continue;

            StarWitness w;
            w.j = j;
            for (auto i : neg.cycle) w.cycle.push_back(g.edges[edges[i].id].step);
            w.anchor = w.cycle.front().from;
            w.j_sum = w.recompute_j_sum();
            const std::size_t anchor = g.edges[edges[neg.cycle.front()].id].from;
            for (auto e : g.path_edges(anchor)) w.prefix.push_back(g.edges[e].step);

            bool visits = false;
            for (const auto& e : w.cycle) visits = visits || e.master_accepting;
            if (!visits) {
                // Breadth-first walk inside the component: anchor, accepting node, anchor.
                auto bfs = [&](std::size_t from, auto goal) {
                    std::vector<std::size_t> via(n, SIZE_MAX);
                    std::vector<bool> seen(n, false);
                    std::deque<std::size_t> work{from};
                    while (!work.empty()) {
                        auto v = work.front();
                        work.pop_front();
                        for (auto e : g.out[v]) {
                            auto t = g.edges[e].to;
                            if (comp[t] != c || seen[t]) continue;
                            seen[t] = true;
                            via[t] = e;
                            if (goal(t)) {
                                std::vector<std::size_t> path;
                                std::size_t x = t;
                                do {
                                    path.push_back(via[x]);
                                    x = g.edges[via[x]].from;
                                } while (x != from);
                                return std::vector<std::size_t>(path.rbegin(), path.rend());
                            }
                            work.push_back(t);
                        }
                    }
                    throw Error("component lost its accepting configuration");
                };
                auto there = bfs(anchor, [&](std::size_t v) { return nwa.master.is_accepting(g.nodes[v].master); });
                auto back = bfs(g.edges[there.back()].to, [&](std::size_t v) { return v == anchor; });
                for (auto e : there) w.closing.push_back(g.edges[e].step);
                for (auto e : back) w.closing.push_back(g.edges[e].step);
            }
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace nwaq

namespace nwaq {

std::string verify_star_witness(const Nwa& input, std::size_t k, const StarWitness& w) {
    const Nwa nwa = exploration_view(input);
    auto replay = [&](const std::vector<ConfigEdge>& steps, Configuration at, const char* what) -> std::string {
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto& e = steps[i];
            if (!(e.from == at)) return std::string(what) + " step " + std::to_string(i) + " does not continue the run";
            auto succ = config_successors(nwa, at, e.letter, k);
            if (std::find(succ.begin(), succ.end(), e) == succ.end() || e.overflow)
                return std::string(what) + " step " + std::to_string(i) + " is not a move of the automaton";
            at = e.to;
        }
        if (!(at == w.anchor)) return std::string(what) + " does not end at the anchor";
        return {};
    };
    if (w.cycle.empty()) return "empty cycle";
    if (w.j == 0 || w.j > k) return "j out of range";
    const auto inits = config_initials(nwa);
    const Configuration start = w.prefix.empty() ? w.anchor : w.prefix.front().from;
    if (std::find(inits.begin(), inits.end(), start) == inits.end()) return "prefix does not start initially";
    if (auto err = replay(w.prefix, start, "prefix"); !err.empty()) return err;
    if (auto err = replay(w.cycle, w.anchor, "cycle"); !err.empty()) return err;
    if (auto err = replay(w.closing, w.anchor, "closing path"); !err.empty()) return err;
    for (const auto& e : w.cycle)
        if (e.from.slots.size() < w.j || (!e.returned.empty() && e.returned.front() < w.j))
            return "one of the first j slots terminates on the cycle";
    if (w.recompute_j_sum() != w.j_sum) return "stored j_sum does not match the cycle";
    if (w.j_sum >= 0) return "j_sum is not negative";
    bool accepting = false;
    for (const auto& e : w.cycle) accepting = accepting || e.master_accepting;
    for (const auto& e : w.closing) accepting = accepting || e.master_accepting;
    if (!accepting) return "no accepting master state on the cycle or closing path";
    return {};
}

}  // namespace nwaq
