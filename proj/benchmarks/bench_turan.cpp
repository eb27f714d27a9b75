#include <benchmark/benchmark.h>

#include "folkreg/turan.hpp"

using namespace folkreg;

static void TuranOracle32(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(max_kp_free_oracle(3, 2));
}
BENCHMARK(TuranOracle32);

static void TuranOracle42(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(max_kp_free_oracle(4, 2));
}
BENCHMARK(TuranOracle42)->Unit(benchmark::kMillisecond);

static void ClusterCliqueSearch(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    ReducedGraph g = extremal_construction(6, k);
    for (auto _ : state) {
        auto clique = find_cluster_clique(g, [](int, int) { return true; });
        benchmark::DoNotOptimize(clique);
    }
}
BENCHMARK(ClusterCliqueSearch)->Arg(2)->Arg(4)->Arg(8);
