#include "nwaq/meanpayoff.hpp"

#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace nwaq {

std::size_t RatioGraph::add_node(bool is_accepting) {
    accepting.push_back(is_accepting);
    return num_nodes++;
}

void RatioGraph::add_edge(std::size_t from, std::size_t to, Weight cost, int ticks) {
    edges.push_back({from, to, cost, ticks});
}

void RatioGraph::check() const {
    if (accepting.size() != num_nodes) throw PreconditionError("accepting flags do not match node count");
    for (auto n : initial)
        if (n >= num_nodes) throw PreconditionError("initial node out of range");
    for (const auto& e : edges) {
        if (e.from >= num_nodes || e.to >= num_nodes) throw PreconditionError("edge endpoint out of range");
        if (e.ticks != 0 && e.ticks != 1) throw PreconditionError("ticks must be 0 or 1");
        if (e.ticks == 0 && e.cost != 0) throw PreconditionError("silent edge with nonzero cost");
    }
}

Rational lasso_ratio(const RatioGraph& g, const RatioLasso& w) {
    BigInt cost = 0, ticks = 0;
    for (auto e : w.cycle) {
        cost += g.edges.at(e).cost;
        ticks += g.edges.at(e).ticks;
    }
    if (ticks == 0) throw PreconditionError("cycle without ticks has no ratio");
    return Rational(cost, ticks);
}

bool lasso_is_accepting(const RatioGraph& g, const RatioLasso& w) {
    if (w.cycle.empty()) return false;
    std::size_t at = SIZE_MAX;
    if (w.access.empty()) {
        at = g.edges.at(w.cycle[0]).from;
        if (std::find(g.initial.begin(), g.initial.end(), at) == g.initial.end()) return false;
    } else {
        at = g.edges.at(w.access[0]).from;
        if (std::find(g.initial.begin(), g.initial.end(), at) == g.initial.end()) return false;
        for (auto e : w.access) {
            if (g.edges.at(e).from != at) return false;
            at = g.edges[e].to;
        }
    }
    const std::size_t start = at;
    bool acc = false;
    int ticks = 0;
    for (auto e : w.cycle) {
        if (g.edges.at(e).from != at) return false;
        at = g.edges[e].to;
        acc = acc || g.accepting[at];
        ticks += g.edges[e].ticks;
    }
    return at == start && acc && ticks > 0;
}

namespace {

using detail::LocalEdge;
using detail::find_negative_cycle;
using detail::strongly_connected;

class Analyzer {
public:
    explicit Analyzer(const RatioGraph& g) : g_(g) {
        g.check();
        const std::size_t n = g.num_nodes;
        std::vector<std::vector<std::size_t>> out_edges(n);
        for (std::size_t i = 0; i < g.edges.size(); ++i) out_edges[g.edges[i].from].push_back(i);
        reach_.assign(n, false);
        parent_.assign(n, SIZE_MAX);
        std::deque<std::size_t> work;
        for (auto s : g.initial)
            if (!reach_[s]) reach_[s] = true, work.push_back(s);
        while (!work.empty()) {
            auto v = work.front();
            work.pop_front();
            for (auto e : out_edges[v]) {
                auto w = g.edges[e].to;
                if (!reach_[w]) reach_[w] = true, parent_[w] = e, work.push_back(w);
            }
        }
        std::vector<std::vector<std::size_t>> adj(n);
        for (const auto& e : g.edges) adj[e.from].push_back(e.to);
        comp_ = strongly_connected(n, adj, reach_);
        std::size_t comps = 0;
        for (auto c : comp_)
            if (c != SIZE_MAX) comps = std::max(comps, c + 1);
        std::vector<bool> accepting(comps, false), ticked(comps, false);
        members_.assign(comps, {});
        internal_.assign(comps, {});
        for (std::size_t v = 0; v < n; ++v)
            if (comp_[v] != SIZE_MAX) {
                members_[comp_[v]].push_back(v);
                accepting[comp_[v]] = accepting[comp_[v]] || g.accepting[v];
            }
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const auto& e = g.edges[i];
            if (comp_[e.from] == SIZE_MAX || comp_[e.from] != comp_[e.to]) continue;
            internal_[comp_[e.from]].push_back(i);
            if (e.ticks) ticked[comp_[e.from]] = true;
        }
        for (std::size_t c = 0; c < comps; ++c)
            if (accepting[c] && ticked[c]) qualifying_.push_back(c);
        // Deterministic order: by smallest member node.
        std::sort(qualifying_.begin(), qualifying_.end(),
                  [&](std::size_t a, std::size_t b) { return members_[a].front() < members_[b].front(); });
        for (auto c : qualifying_) {
            largest_ = std::max(largest_, members_[c].size());
            for (auto e : internal_[c]) max_cost_ = std::max(max_cost_, checked_abs(g.edges[e].cost));
        }
    }

    bool empty() const { return qualifying_.empty(); }
    std::size_t largest_component() const { return largest_; }
    Weight max_cost() const { return max_cost_; }

    ThresholdResult probe(const Rational& t, bool strict, bool want_witness) const {
        const BigInt p = boost::multiprecision::numerator(t);
        const BigInt q = boost::multiprecision::denominator(t);
        ThresholdResult best;
        for (auto c : qualifying_) {
            BigInt bound = 0;
            for (auto e : internal_[c]) {
                BigInt w = q * g_.edges[e].cost - p * g_.edges[e].ticks;
                bound = std::max(bound, BigInt(abs(w)));
            }
            bound *= members_[c].size() + 2;
            ThresholdResult r;
            if (bound < (BigInt(1) << 62))
                r = probe_component<std::int64_t>(c, p, q, strict, want_witness);
            else if (bound < (BigInt(1) << 125))
                r = probe_component<__int128>(c, p, q, strict, want_witness);
            else
                r = probe_component<BigInt>(c, p, q, strict, want_witness);
            if (!r.holds) continue;
            if (!want_witness || r.exact) return r;
            if (!best.holds) best = r;
        }
        return best;
    }

private:
    template <class T>
    static T from_big(const BigInt& x) {
        if constexpr (std::is_same_v<T, std::int64_t>) {
            return x.template convert_to<std::int64_t>();
        } else {
            // Split into two 62-bit halves; magnitude is below 2^125 here.
            const bool neg = x < 0;
            BigInt m = abs(x);
            const BigInt mask = (BigInt(1) << 62) - 1;
            const auto lo = static_cast<std::int64_t>((m & mask).template convert_to<std::int64_t>());
            const auto hi = static_cast<std::int64_t>((m >> 62).template convert_to<std::int64_t>());
            __int128 v = (static_cast<__int128>(hi) << 62) + lo;
            return neg ? -v : v;
        }
    }

    template <class T>
    static BigInt to_big(const T& x) {
        if constexpr (std::is_same_v<T, BigInt>) {
            return x;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return BigInt(x);
        } else {
            const bool neg = x < 0;
            unsigned __int128 m = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
            BigInt r = BigInt(static_cast<std::uint64_t>(m >> 64));
            r <<= 64;
            r += static_cast<std::uint64_t>(m);
            return neg ? BigInt(-r) : r;
        }
    }

    /// Shortest path by edge count inside component c from a to any node
    /// satisfying goal, using only edges passing the filter.
    std::vector<std::size_t> bfs_path(std::size_t c, std::size_t from, const std::function<bool(std::size_t)>& goal,
                                      const std::function<bool(std::size_t)>& usable, bool nonempty) const {
        if (!nonempty && goal(from)) return {};
        std::vector<std::size_t> via(g_.num_nodes, SIZE_MAX);
        std::vector<bool> seen(g_.num_nodes, false);
        seen[from] = !nonempty;
        std::deque<std::size_t> work{from};
        while (!work.empty()) {
            auto v = work.front();
            work.pop_front();
            for (auto e : internal_[c]) {
                if (g_.edges[e].from != v || !usable(e)) continue;
                auto w = g_.edges[e].to;
                if (seen[w]) continue;
                seen[w] = true;
                via[w] = e;
                if (goal(w)) {
                    std::vector<std::size_t> path;
                    std::size_t x = w;
                    do {
                        path.push_back(via[x]);
                        x = g_.edges[via[x]].from;
                    } while (x != from);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                work.push_back(w);
            }
        }
        throw Error("no path inside strongly connected component");
    }

    std::vector<std::size_t> access_to(std::size_t v) const {
        std::vector<std::size_t> path;
        while (parent_[v] != SIZE_MAX) {
            path.push_back(parent_[v]);
            v = g_.edges[parent_[v]].from;
        }
        return {path.rbegin(), path.rend()};
    }

    RatioLasso lasso_from(std::size_t start, std::vector<std::size_t> cycle) const {
        return RatioLasso{access_to(start), std::move(cycle)};
    }

    template <class T>
    ThresholdResult probe_component(std::size_t c, const BigInt& p, const BigInt& q, bool strict,
                                    bool want_witness) const {
        const auto& nodes = members_[c];
        std::vector<std::size_t> local(g_.num_nodes, SIZE_MAX);
        for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
        std::vector<LocalEdge> edges;
        std::vector<T> w;
        std::vector<BigInt> wbig;
        for (auto e : internal_[c]) {
            edges.push_back({local[g_.edges[e].from], local[g_.edges[e].to], e});
            wbig.push_back(q * g_.edges[e].cost - p * g_.edges[e].ticks);
            w.push_back(from_big_any<T>(wbig.back()));
        }
        auto neg = find_negative_cycle<T>(nodes.size(), edges, w);
        ThresholdResult r;
        auto is_acc = [&](std::size_t v) { return static_cast<bool>(g_.accepting[v]); };
        auto any = [](std::size_t) { return true; };
        if (!neg.cycle.empty()) {
            r.holds = true;
            if (!want_witness) return r;
            std::vector<std::size_t> cyc;
            BigInt wc = 0;
            bool acc = false;
            for (auto i : neg.cycle) {
                cyc.push_back(edges[i].id);
                wc += wbig[i];
                acc = acc || g_.accepting[g_.edges[edges[i].id].to];
            }
            const std::size_t x = g_.edges[cyc.front()].from;
            if (acc) {
                r.witness = lasso_from(x, cyc);
                return r;
            }
            auto there = bfs_path(c, x, is_acc, any, true);
            const std::size_t a = g_.edges[there.back()].to;
            auto back = bfs_path(c, a, [&](std::size_t v) { return v == x; }, any, true);
            BigInt wd = 0;
            std::vector<std::size_t> detour = there;
            detour.insert(detour.end(), back.begin(), back.end());
            for (auto e : detour) wd += q * g_.edges[e].cost - p * g_.edges[e].ticks;
            BigInt m = wd >= 0 ? BigInt(wd / (-wc) + 1) : BigInt(1);
            std::vector<std::size_t> walk;
            if (m > 100000) {
                r.exact = false;
                m = 1;
            }
            for (BigInt i = 0; i < m; ++i) walk.insert(walk.end(), cyc.begin(), cyc.end());
            walk.insert(walk.end(), detour.begin(), detour.end());
            r.witness = lasso_from(x, walk);
            return r;
        }
        if (strict) return r;

        // No negative cycle: zero cycles live on tight edges of the potential.
        std::vector<bool> tight(g_.edges.size(), false);
        std::vector<std::vector<std::size_t>> adj(nodes.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (neg.dist[edges[i].u] + w[i] == neg.dist[edges[i].v]) {
                tight[edges[i].id] = true;
                adj[edges[i].u].push_back(edges[i].v);
            }
        auto tcomp = strongly_connected(nodes.size(), adj, std::vector<bool>(nodes.size(), true));
        std::size_t limit_edge = SIZE_MAX;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = g_.edges[edges[i].id];
            if (!tight[edges[i].id] || !e.ticks || tcomp[edges[i].u] != tcomp[edges[i].v]) continue;
            const std::size_t tc = tcomp[edges[i].u];
            std::size_t acc_node = SIZE_MAX;
            for (std::size_t v = 0; v < nodes.size(); ++v)
                if (tcomp[v] == tc && g_.accepting[nodes[v]]) {
                    acc_node = nodes[v];
                    break;
                }
            if (acc_node == SIZE_MAX) {
                if (limit_edge == SIZE_MAX) limit_edge = edges[i].id;
                continue;
            }
            r.holds = true;
            if (!want_witness) return r;
            auto in_tight = [&](std::size_t id) { return static_cast<bool>(tight[id]); };
            const auto& te = g_.edges[edges[i].id];
            auto to_u = bfs_path(c, acc_node, [&](std::size_t v) { return v == te.from; }, in_tight, false);
            auto to_a = bfs_path(c, te.to, [&](std::size_t v) { return v == acc_node; }, in_tight, false);
            std::vector<std::size_t> walk = to_u;
            walk.push_back(edges[i].id);
            walk.insert(walk.end(), to_a.begin(), to_a.end());
            r.witness = lasso_from(acc_node, walk);
            return r;
        }
        if (limit_edge == SIZE_MAX) return r;
        r.holds = true;
        r.exact = false;
        if (!want_witness) return r;
        auto in_tight = [&](std::size_t id) { return static_cast<bool>(tight[id]); };
        const auto& te = g_.edges[limit_edge];
        auto back = bfs_path(c, te.to, [&](std::size_t v) { return v == te.from; }, in_tight, false);
        std::vector<std::size_t> walk{limit_edge};
        walk.insert(walk.end(), back.begin(), back.end());
        auto there = bfs_path(c, te.from, is_acc, any, true);
        const std::size_t a = g_.edges[there.back()].to;
        auto home = bfs_path(c, a, [&](std::size_t v) { return v == te.from; }, any, true);
        walk.insert(walk.end(), there.begin(), there.end());
        walk.insert(walk.end(), home.begin(), home.end());
        r.witness = lasso_from(te.from, walk);
        return r;
    }

    template <class T>
    static T from_big_any(const BigInt& x) {
        if constexpr (std::is_same_v<T, BigInt>)
            return x;
        else
            return from_big<T>(x);
    }

    const RatioGraph& g_;
    std::vector<bool> reach_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> comp_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::vector<std::size_t>> internal_;
    std::vector<std::size_t> qualifying_;
    std::size_t largest_ = 0;
    Weight max_cost_ = 0;
};

}  // namespace

ThresholdResult threshold_emptiness(const RatioGraph& g, const Threshold& t) {
    return Analyzer(g).probe(t.value, t.strict, true);
}

RatioInfimum infimum_ratio(const RatioGraph& g) {
    const Analyzer an(g);
    RatioInfimum r;
    if (an.empty()) return r;
    // Every qualifying simple cycle has at most n ticks, so distinct
    // candidate ratios are at least 1/n² apart.
    const BigInt n = an.largest_component();
    Rational lo = Rational(-an.max_cost() - 1);
    Rational hi = Rational(an.max_cost());
    const Rational gap(BigInt(1), n * n);
    while (hi - lo >= gap) {
        const Rational mid = (lo + hi) / 2;
        if (an.probe(mid, false, false).holds)
            hi = mid;
        else
            lo = mid;
    }
    // The unique fraction with denominator ≤ n in (lo, hi].
    std::optional<Rational> best;
    for (BigInt q = 1; q <= n; ++q) {
        const Rational scaled = hi * q;
        BigInt p = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
        if (Rational(p) > scaled) --p;
        const Rational cand(p, q);
        if (cand > lo) {
            best = cand;
            break;
        }
    }
    if (!best) throw Error("cycle ratio search lost its bracket");
    auto w = an.probe(*best, false, true);
    if (!w.holds) throw Error("cycle ratio search lost its bracket");
    r.value = Value::finite(*best);
    r.witness = w.witness;
    r.exact = w.exact;
    return r;
}

}  // namespace nwaq
