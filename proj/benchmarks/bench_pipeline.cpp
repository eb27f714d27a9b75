#include <benchmark/benchmark.h>

#include "folkreg/harness.hpp"
#include "folkreg/prng.hpp"

using namespace folkreg;

static void EndToEndPipeline(benchmark::State& state) {
    int part_size = static_cast<int>(state.range(0));
    PartiteHost host = random_host(6, part_size, 2, derive_seed(1, 0x405f));
    DenseGraph target = random_bounded_degree_graph(8, 3, derive_seed(1, 0x7a59));
    PipelineConfig cfg;
    cfg.part_size = part_size;
    cfg.seed = 1;
    for (auto _ : state) {
        PipelineReport rep = run_pipeline(host, target, cfg);
        benchmark::DoNotOptimize(rep);
    }
    state.SetComplexityN(part_size);
}
BENCHMARK(EndToEndPipeline)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond)->Complexity();

static void MulticolorPartition(benchmark::State& state) {
    PartiteHost host = random_host(3, static_cast<int>(state.range(0)), 2, 7);
    RegularityParams params;
    params.epsilon = Rational(1, 10);
    params.min_classes = 2;
    params.max_rounds = 2;
    params.sample_trials = 8;
    params.verdict_mode = RegularityParams::VerdictMode::SampledOnly;
    params.seed = 7;
    for (auto _ : state) {
        auto result = iterate_to_regular(host, params, all_colors(host));
        benchmark::DoNotOptimize(result);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(MulticolorPartition)->RangeMultiplier(2)->Range(32, 128)->Complexity();
