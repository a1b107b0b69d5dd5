#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace nwaq::detail {

struct LocalEdge {
    std::size_t u, v, id;
};

/// Iterative Tarjan; returns component id per node (SIZE_MAX if excluded).
inline std::vector<std::size_t> strongly_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& adj,
                                            const std::vector<bool>& include) {
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, comps = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!include[root] || index[root] != SIZE_MAX) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[v].size()) {
                const std::size_t w = adj[v][i++];
                if (!include[w]) continue;
                if (index[w] == SIZE_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comps;
                } while (w != v);
                ++comps;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

template <class T>
struct NegativeCycleSearch {
    std::vector<std::size_t> cycle;  // local edge indexes
    std::vector<T> dist;
};

/// Bellman-Ford from a virtual source joined to every node with weight 0.
template <class T>
NegativeCycleSearch<T> find_negative_cycle(std::size_t n, const std::vector<LocalEdge>& edges,
                                           const std::vector<T>& w) {
    NegativeCycleSearch<T> r;
    r.dist.assign(n, T(0));
    std::vector<std::size_t> pred(n, SIZE_MAX);
    std::size_t last = SIZE_MAX;
    for (std::size_t round = 0; round <= n; ++round) {
        last = SIZE_MAX;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const T cand = r.dist[edges[i].u] + w[i];
            if (cand < r.dist[edges[i].v]) {
                r.dist[edges[i].v] = cand;
                pred[edges[i].v] = i;
                last = edges[i].v;
            }
        }
        if (last == SIZE_MAX) return r;
    }
    std::size_t x = last;
    for (std::size_t i = 0; i < n; ++i) x = edges[pred[x]].u;
    std::size_t v = x;
    do {
        r.cycle.push_back(pred[v]);
        v = edges[pred[v]].u;
    } while (v != x);
    std::reverse(r.cycle.begin(), r.cycle.end());
    return r;
}

}  // namespace nwaq::detail
