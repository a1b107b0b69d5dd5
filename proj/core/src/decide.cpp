#include "nwaq/decide.hpp"

#include "nwaq/reduce.hpp"
#include "nwaq/width.hpp"

namespace nwaq {

namespace {

/// Stages three and four of the pipeline on a deterministic automaton,
/// with a map back to the input alphabet.
struct Pipeline {
    std::optional<Materialized> materialized;
    Nwa reduced;
    FragmentAutomaton fragments;

    Pipeline(const Nwa& nwa, std::size_t k) {
        const Nwa* det = &nwa;
        if (!is_deterministic(nwa).deterministic) {
            materialized = materialize_deterministic(nwa, k);
            det = &materialized->nwa;
        }
        reduced = reduce_width1(*det, k);
        fragments = fragment_automaton(reduced);
    }

    LassoWord lasso(const RatioLasso& w) const {
        LassoWord out{fragments.expand(w.access), fragments.expand(w.cycle)};
        if (materialized) {
            for (auto& a : out.prefix) a = materialized->projection.at(a);
            for (auto& a : out.period) a = materialized->projection.at(a);
        }
        return out;
    }
};

void check_width(const Nwa& nwa, std::size_t k) {
    if (!has_width(nwa, k).holds) throw PreconditionError("automaton does not have width " + std::to_string(k));
}

}  // namespace

EmptinessResult emptiness(const Nwa& nwa, std::size_t k, const Threshold& t) {
    check_width(nwa, k);
    EmptinessResult r;
    if (auto star = check_star_condition(nwa, k)) {
        r.answer = true;
        r.certificate.star = std::move(star);
        return r;
    }
    std::optional<Pipeline> p;
    try {
        p.emplace(nwa, k);
    } catch (const NegInfinityFragment&) {
        r.answer = true;
        return r;
    }
    auto th = threshold_emptiness(p->fragments.graph, t);
    r.answer = th.holds;
    if (th.holds) {
        if (th.witness) r.certificate.lasso = p->lasso(*th.witness);
        r.certificate.exact = th.exact;
    } else {
        r.infimum = infimum_ratio(p->fragments.graph).value;
    }
    return r;
}

InfimumResult infimum(const Nwa& nwa, std::size_t k) {
    check_width(nwa, k);
    InfimumResult r;
    if (auto star = check_star_condition(nwa, k)) {
        r.value = Value::neg_infinity();
        r.certificate.star = std::move(star);
        return r;
    }
    std::optional<Pipeline> p;
    try {
        p.emplace(nwa, k);
    } catch (const NegInfinityFragment&) {
        r.value = Value::neg_infinity();
        return r;
    }
    auto inf = infimum_ratio(p->fragments.graph);
    r.value = inf.value;
    if (inf.witness) r.certificate.lasso = p->lasso(*inf.witness);
    r.certificate.exact = inf.exact;
    return r;
}

Nwa mirror(const Nwa& nwa) {
    Nwa m = nwa;
    for (auto& b : m.slaves) {
        std::vector<Transition> trans;
        for (auto t : b.base.transitions()) {
            t.label = -b.effective(t.label);
            trans.push_back(t);
        }
        b.base = LabeledAutomaton(b.base.state_names(), b.base.initials(), b.base.accepting_states(), std::move(trans));
        b.value_fn = ValueFn::Sum;
    }
    return m;
}

bool universality_deterministic(const Nwa& nwa, std::size_t k, const Threshold& t) {
    auto det = is_deterministic(nwa);
    if (!det.deterministic) throw NondeterministicInput(det.site);
    // A(w) > t iff -A(w) < -t, and A(w) >= t iff -A(w) <= -t.
    const Threshold flipped{-t.value, !t.strict};
    return !emptiness(mirror(nwa), k, flipped).answer;
}

}  // namespace nwaq
