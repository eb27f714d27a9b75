#include <benchmark/benchmark.h>

#include <random>

#include "folkreg/prng.hpp"
#include "folkreg/regularity.hpp"

using namespace folkreg;

namespace {

// bipartite pair between [0, n) and [n, 2n) with i.i.d. density 1/2
struct Pair {
    DenseGraph graph{0};
    VertexSet a, b;
};

Pair make_pair(int n, uint64_t seed) {
    Pair p;
    p.graph = DenseGraph(2 * n);
    std::mt19937_64 rng(mix64(seed));
    for (int u = 0; u < n; ++u)
        for (int v = n; v < 2 * n; ++v)
            if (rng() & 1) p.graph.add_edge(u, v);
    p.a = VertexSet::range(2 * n, 0, n);
    p.b = VertexSet::range(2 * n, n, 2 * n);
    return p;
}

} // namespace

static void ExhaustivePairCheck(benchmark::State& state) {
    Pair p = make_pair(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        PairStats st = check_pair_exhaustive(p.graph, p.a, p.b, Rational(1, 4));
        benchmark::DoNotOptimize(st);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ExhaustivePairCheck)->DenseRange(8, 14, 2)->Complexity();

static void SampledPairCheck(benchmark::State& state) {
    Pair p = make_pair(static_cast<int>(state.range(0)), 42);
    uint64_t seed = 0;
    for (auto _ : state) {
        PairStats st = check_pair_sampled(p.graph, p.a, p.b, Rational(1, 10), 16, ++seed);
        benchmark::DoNotOptimize(st);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SampledPairCheck)->RangeMultiplier(2)->Range(32, 256)->Complexity();
