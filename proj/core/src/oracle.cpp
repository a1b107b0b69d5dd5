#include "nwaq/oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace nwaq {

RunStep RunStep::from_edge(const ConfigEdge& e) {
    return RunStep{e.returned, e.slot_weights, e.invokes(), e.master_accepting};
}

namespace {

struct Live {
    Weight acc;
    std::size_t position;
};

}  // namespace

namespace {

Value run_lasso_value(const std::vector<const RunStep*>& prefix, const std::vector<const RunStep*>& cycle,
                      std::size_t max_slots) {
    if (cycle.empty()) throw PreconditionError("empty cycle");
    const std::size_t start = prefix.size();
    const std::size_t len = cycle.size();
    std::vector<MaybeWeight> period(len);
    std::vector<Live> live, next;
    std::size_t position = 0;

    auto apply = [&](const RunStep& s) {
        next.clear();
        std::size_t t = 0;
        for (std::size_t p = 0; p < live.size(); ++p) {
            if (t < s.terminated.size() && s.terminated[t] == p) {
                ++t;
                if (live[p].position >= start && live[p].position < start + len)
                    period[live[p].position - start] = live[p].acc;
            } else {
                next.push_back(live[p]);
            }
        }
        if (t != s.terminated.size() || s.weights.size() != next.size() + (s.opens_slot ? 1 : 0))
            throw Error("run step does not match the active slots");
        for (std::size_t i = 0; i < next.size(); ++i) next[i].acc = checked_add(next[i].acc, s.weights[i]);
        if (s.opens_slot) next.push_back({s.weights.back(), position});
        live.swap(next);
        ++position;
    };

    for (const auto* s : prefix) apply(*s);
    // A slot alive at a cycle boundary only moves to lower positions, so one
    // that outlives max_slots + 1 further cycles never terminates.
    for (std::size_t round = 0; round < max_slots + 2; ++round)
        for (const auto* s : cycle) apply(*s);
    for (const auto& l : live)
        if (l.position < start + len) return Value::plus_infinity();

    bool accepting = false;
    for (const auto* s : cycle) accepting = accepting || s->master_accepting;
    if (!accepting) return Value::plus_infinity();
    for (std::size_t i = 0; i < len; ++i)
        if (!cycle[i]->opens_slot) period[i].reset();
    return limavg_periodic({}, period);
}

std::vector<const RunStep*> pointers(const std::vector<RunStep>& steps) {
    std::vector<const RunStep*> out;
    for (const auto& s : steps) out.push_back(&s);
    return out;
}

}  // namespace

Value evaluate_run_lasso(const std::vector<RunStep>& prefix, const std::vector<RunStep>& cycle,
                         std::size_t max_slots) {
    return run_lasso_value(pointers(prefix), pointers(cycle), max_slots);
}

LassoEvaluator::LassoEvaluator(const Nwa& nwa, std::size_t width_cap)
    : cap_(width_cap), letters_(nwa.alphabet.size()) {
    auto det = is_deterministic(nwa);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    if (width_cap == 0) throw PreconditionError("width cap must be positive");
    const ConfigGraph g = explore_configurations(nwa, width_cap);
    initial_ = g.initial_nodes.at(0);
    next_.assign(g.nodes.size() * letters_, kDead);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        next_[g.edges[e].from * letters_ + g.edges[e].step.letter] = e;
        target_.push_back(g.edges[e].to);
        steps_.push_back(RunStep::from_edge(g.edges[e].step));
    }
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        for (Letter a = 0; a < letters_; ++a)
            if (next_[n * letters_ + a] == kDead) {
                auto succ = config_successors(nwa, g.nodes[n], a, width_cap);
                if (!succ.empty() && succ[0].overflow) next_[n * letters_ + a] = kOverflow;
            }
}

Value LassoEvaluator::evaluate(const LassoWord& w) const {
    if (w.period.empty()) throw PreconditionError("lasso period must be nonempty");
    std::size_t node = initial_;
    std::vector<std::size_t> edges;
    auto step = [&](Letter a) {
        const std::size_t e = next_.at(node * letters_ + a);
        if (e == kDead) return false;
        if (e == kOverflow) throw WidthExceeded(edges.size());
        edges.push_back(e);
        node = target_[e];
        return true;
    };
    for (Letter a : w.prefix)
        if (!step(a)) return Value::plus_infinity();
    std::unordered_map<std::size_t, std::size_t> seen;
    while (true) {
        auto [it, fresh] = seen.emplace(node, edges.size());
        if (!fresh) {
            const std::size_t b = it->second;
            std::vector<const RunStep*> prefix, cycle;
            for (std::size_t i = 0; i < b; ++i) prefix.push_back(&steps_[edges[i]]);
            for (std::size_t i = b; i < edges.size(); ++i) cycle.push_back(&steps_[edges[i]]);
            return run_lasso_value(prefix, cycle, cap_);
        }
        for (Letter a : w.period)
            if (!step(a)) return Value::plus_infinity();
    }
}

Value evaluate_lasso(const Nwa& nwa, const LassoWord& w, std::size_t width_cap) {
    return LassoEvaluator(nwa, width_cap).evaluate(w);
}

Value evaluate_lasso_runs(const Nwa& input, const LassoWord& w, std::size_t width_cap, std::size_t max_repeats) {
    if (w.period.empty()) throw PreconditionError("lasso period must be nonempty");
    const Nwa nwa = exploration_view(input);
    const std::size_t start = w.prefix.size();
    const std::size_t total = start + w.period.size();
    auto letter_at = [&](std::size_t pos) { return pos < start ? w.prefix[pos] : w.period[pos - start]; };

    // Product of the configuration graph with the positions of the lasso.
    struct Node {
        Configuration c;
        std::size_t pos;
        auto operator<=>(const Node&) const = default;
    };
    std::map<Node, std::size_t> index;
    std::vector<Node> nodes;
    std::vector<std::size_t> parent;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> targets;
    std::vector<RunStep> steps;
    auto intern = [&](const Node& n, std::size_t via) {
        auto [it, fresh] = index.emplace(n, nodes.size());
        if (fresh) {
            nodes.push_back(n);
            parent.push_back(via);
            out.emplace_back();
        }
        return it->second;
    };
    for (const auto& c : config_initials(nwa)) intern({c, 0}, SIZE_MAX);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        const Node here = nodes[v];
        const std::size_t pos = here.pos + 1 == total ? start : here.pos + 1;
        for (auto& e : config_successors(nwa, here.c, letter_at(here.pos), width_cap)) {
            if (e.overflow) continue;
            const std::size_t id = steps.size();
            steps.push_back(RunStep::from_edge(e));
            targets.push_back(0);
            targets[id] = intern({std::move(e.to), pos}, id);
            out[v].push_back(id);
        }
    }
    std::vector<std::size_t> from(steps.size());
    for (std::size_t v = 0; v < nodes.size(); ++v)
        for (auto id : out[v]) from[id] = v;

    Value best = Value::plus_infinity();
    const std::size_t limit = max_repeats * w.period.size();
    std::vector<const RunStep*> prefix, cycle;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t anchor, std::size_t v) {
        for (auto id : out[v]) {
            cycle.push_back(&steps[id]);
            if (targets[id] == anchor) {
                const Value val = run_lasso_value(prefix, cycle, width_cap);
                if (val < best) best = val;
            } else if (cycle.size() < limit) {
                dfs(anchor, targets[id]);
            }
            cycle.pop_back();
        }
    };
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].pos != start) continue;
        prefix.clear();
        for (std::size_t x = v; parent[x] != SIZE_MAX; x = from[parent[x]]) prefix.push_back(&steps[parent[x]]);
        std::reverse(prefix.begin(), prefix.end());
        dfs(v, v);
    }
    return best;
}

std::vector<Weight> RunTrace::values() const {
    std::vector<std::pair<std::size_t, Weight>> all;
    for (const auto& r : records)
        for (const auto& [pos, v] : r.returned)
            if (v) all.emplace_back(pos, *v);
    all.insert(all.end(), returned_at_end.begin(), returned_at_end.end());
    std::sort(all.begin(), all.end());
    std::vector<Weight> out;
    for (const auto& [pos, v] : all) out.push_back(v);
    return out;
}

RunTrace trace_run(const Nwa& nwa, const Word& word, std::size_t width_cap) {
    auto det = is_deterministic(nwa);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    RunTrace trace;
    Configuration c{nwa.master.initials().at(0), {}};
    std::vector<Live> live;
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        TraceRecord rec;
        rec.before = c;
        auto edges = config_successors(nwa, c, word[pos], width_cap);
        if (edges.empty()) {
            trace.complete = false;
            trace.records.push_back(std::move(rec));
            return trace;
        }
        const auto& e = edges[0];
        if (e.overflow) throw WidthExceeded(pos);
        std::vector<Live> next;
        std::size_t t = 0;
        for (std::size_t p = 0; p < live.size(); ++p) {
            if (t < e.returned.size() && e.returned[t] == p) {
                rec.returned.emplace_back(live[p].position, live[p].acc);
                ++t;
            } else {
                next.push_back(live[p]);
            }
        }
        for (std::size_t i = 0; i < next.size(); ++i) next[i].acc = checked_add(next[i].acc, e.slot_weights[i]);
        if (e.invokes()) {
            next.push_back({e.slot_weights.back(), pos});
            rec.invoked = e.invoked;
        } else {
            rec.returned.emplace_back(pos, std::nullopt);
        }
        live = std::move(next);
        c = e.to;
        trace.records.push_back(std::move(rec));
    }
    for (std::size_t p = 0; p < live.size(); ++p) {
        const auto& slot = c.slots[p];
        if (nwa.slaves[slot.slave].base.is_accepting(slot.state))
            trace.returned_at_end.emplace_back(live[p].position, live[p].acc);
    }
    return trace;
}

bool lasso_order(const LassoWord& a, const LassoWord& b) {
    if (a.period.size() != b.period.size()) return a.period.size() < b.period.size();
    if (a.period != b.period) return a.period < b.period;
    if (a.prefix.size() != b.prefix.size()) return a.prefix.size() < b.prefix.size();
    return a.prefix < b.prefix;
}

void for_each_lasso(const Nwa& nwa, LassoBounds bounds, const std::function<void(const LassoWord&)>& f) {
    const auto& m = nwa.master;
    if (m.initials().empty()) return;
    LassoWord w;
    std::function<void(State)> period_dfs = [&](State q) {
        if (!w.period.empty()) f(w);
        if (w.period.size() == bounds.max_period) return;
        auto out = m.out(q);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i > 0 && out[i].letter == out[i - 1].letter) continue;
            w.period.push_back(out[i].letter);
            period_dfs(out[i].to);
            w.period.pop_back();
        }
    };
    std::function<void(State)> prefix_dfs = [&](State q) {
        period_dfs(q);
        if (w.prefix.size() == bounds.max_prefix) return;
        auto out = m.out(q);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i > 0 && out[i].letter == out[i - 1].letter) continue;
            w.prefix.push_back(out[i].letter);
            prefix_dfs(out[i].to);
            w.prefix.pop_back();
        }
    };
    prefix_dfs(m.initials()[0]);
}

namespace {

void offer(LassoSearchResult& r, const Value& v, const LassoWord& w) {
    if (v.tag() == Value::Tag::PlusInfinity || v.tag() == Value::Tag::Bottom) return;
    if (!r.witness || v < r.best || (v == r.best && lasso_order(w, *r.witness))) {
        r.best = v;
        r.witness = w;
    }
}

LassoSearchResult enumerate_runs(const Nwa& input, std::size_t max_prefix, std::size_t max_period,
                                 std::size_t width_cap) {
    const Nwa nwa = normalize_slaves(input);
    const ConfigGraph g = explore_configurations(nwa, width_cap);
    LassoSearchResult result;
    std::vector<std::size_t> prefix_edges;
    std::vector<std::size_t> cycle_edges;

    auto steps_of = [&](const std::vector<std::size_t>& edges) {
        std::vector<RunStep> s;
        for (auto e : edges) s.push_back(RunStep::from_edge(g.edges[e].step));
        return s;
    };
    auto letters_of = [&](const std::vector<std::size_t>& edges) {
        Word w;
        for (auto e : edges) w.push_back(g.edges[e].step.letter);
        return w;
    };

    std::function<void(std::size_t, std::size_t)> cycle_dfs = [&](std::size_t anchor, std::size_t node) {
        for (auto e : g.out[node]) {
            cycle_edges.push_back(e);
            if (g.edges[e].to == anchor) {
                const Value v = evaluate_run_lasso(steps_of(prefix_edges), steps_of(cycle_edges), width_cap);
                offer(result, v, LassoWord{letters_of(prefix_edges), letters_of(cycle_edges)});
            }
            if (cycle_edges.size() < max_period) cycle_dfs(anchor, g.edges[e].to);
            cycle_edges.pop_back();
        }
    };
    std::function<void(std::size_t)> prefix_dfs = [&](std::size_t node) {
        cycle_dfs(node, node);
        if (prefix_edges.size() == max_prefix) return;
        for (auto e : g.out[node]) {
            prefix_edges.push_back(e);
            prefix_dfs(g.edges[e].to);
            prefix_edges.pop_back();
        }
    };
    for (auto n : g.initial_nodes) prefix_dfs(n);
    return result;
}

}  // namespace

LassoSearchResult enumerate_lasso_infimum(const Nwa& nwa, std::size_t max_prefix, std::size_t max_period,
                                          std::size_t width_cap) {
    if (!is_deterministic(nwa).deterministic) return enumerate_runs(nwa, max_prefix, max_period, width_cap);
    LassoSearchResult result;
    const LassoEvaluator eval(nwa, width_cap);
    for_each_lasso(nwa, {max_prefix, max_period}, [&](const LassoWord& w) {
        try {
            offer(result, eval.evaluate(w), w);
        } catch (const WidthExceeded&) {
        }
    });
    return result;
}

}  // namespace nwaq
