#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "nwaq/corpus.hpp"
#include "nwaq/decide.hpp"
#include "nwaq/format.hpp"
#include "nwaq/reduce.hpp"
#include "nwaq/width.hpp"

using namespace nwaq;

namespace {

void BM_LassoEvaluate(benchmark::State& state) {
    const Nwa n = corpus::art_one_typed(3);
    const LassoEvaluator ev(n, 3);
    const LassoWord w = parse_lasso(n.alphabet, "r1 r2 | r3 g1 hash g2 r1 g3 r2 hash r3 g1 g2 g3 r1 r2");
    for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(w));
}
BENCHMARK(BM_LassoEvaluate);

void BM_LassoEnumeration(benchmark::State& state) {
    const Nwa n = corpus::art_one_typed(2);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_lasso_infimum(n, 1, state.range(0), 2));
}
BENCHMARK(BM_LassoEnumeration)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_Width(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Nwa n = corpus::k_art(k);
    for (auto _ : state) benchmark::DoNotOptimize(has_width(n, k));
}
BENCHMARK(BM_Width)->DenseRange(2, 6);

void BM_ExploreConfigurations(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Nwa n = corpus::art_one_typed(k);
    for (auto _ : state) benchmark::DoNotOptimize(explore_configurations(n, k));
    state.counters["nodes"] = static_cast<double>(explore_configurations(n, k).nodes.size());
}
BENCHMARK(BM_ExploreConfigurations)->DenseRange(2, 4);

void BM_Reduce(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Nwa n = corpus::art_one_typed(k);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_width1(n, k));
    state.counters["states"] = static_cast<double>(reduce_width1(n, k).master.num_states());
}
BENCHMARK(BM_Reduce)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_Infimum(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Nwa n = corpus::art_one_typed(k);
    for (auto _ : state) benchmark::DoNotOptimize(infimum(n, k));
}
BENCHMARK(BM_Infimum)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_StarCondition(benchmark::State& state) {
    const Nwa n = corpus::cond_motivation(true);
    for (auto _ : state) benchmark::DoNotOptimize(check_star_condition(n, 2));
}
BENCHMARK(BM_StarCondition);

void BM_InfimumRatio(benchmark::State& state) {
    testing::Rng rng(1);
    testing::GraphShape shape;
    shape.max_nodes = static_cast<std::size_t>(state.range(0));
    shape.max_edges = shape.max_nodes * 4;
    std::vector<RatioGraph> graphs;
    for (int i = 0; i < 64; ++i) graphs.push_back(testing::random_ratio_graph(rng, shape));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(infimum_ratio(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_InfimumRatio)->RangeMultiplier(4)->Range(8, 512);

void BM_McaTranslation(benchmark::State& state) {
    const Nwa n = corpus::k_art(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nwa_to_mca(n, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_McaTranslation)->DenseRange(2, 4);

}  // namespace
