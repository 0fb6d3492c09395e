#include <benchmark/benchmark.h>

#include <vector>

#include "aquafront/hydraulics.hpp"
#include "aquafront/objectives.hpp"
#include "helpers.hpp"

using namespace aquafront;

namespace {

// Cold path: every call rebuilds the solver scaffolding.
void BM_SteadyStateTiny3(benchmark::State& state) {
    PipeNetwork net = testutil::make_tiny3();
    std::vector<int> design = {2, 2, 1};
    for (auto _ : state) {
        HydraulicState s = solve_steady_state(net, design);
        benchmark::DoNotOptimize(s.max_mass_residual);
    }
}
BENCHMARK(BM_SteadyStateTiny3);

void BM_SteadyStateSynth8(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    std::vector<int> design = {3, 3, 3, 3, 3, 3, 3, 3};
    for (auto _ : state) {
        HydraulicState s = solve_steady_state(net, design);
        benchmark::DoNotOptimize(s.max_mass_residual);
    }
}
BENCHMARK(BM_SteadyStateSynth8);

// Warm path: the evaluator reuses its buffers, as the optimizer does. The
// design cycles so the solver cannot coast on one warm start.
void BM_EvaluateSynth8(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    Evaluator evaluator(net);
    std::vector<std::vector<int>> designs;
    for (int v = 0; v < 6; ++v) {
        std::vector<int> d(8, v);
        d[static_cast<std::size_t>(v) % 8] = 5 - v;
        designs.push_back(d);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        Evaluation e = evaluator.evaluate_indices(designs[i]);
        benchmark::DoNotOptimize(e.resilience);
        i = (i + 1) % designs.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvaluateSynth8);

void BM_EvaluateTiny3(benchmark::State& state) {
    PipeNetwork net = testutil::make_tiny3();
    Evaluator evaluator(net);
    std::vector<std::vector<int>> designs = {{0, 0, 0}, {1, 2, 0}, {2, 2, 2}, {3, 1, 3}};
    std::size_t i = 0;
    for (auto _ : state) {
        Evaluation e = evaluator.evaluate_indices(designs[i]);
        benchmark::DoNotOptimize(e.resilience);
        i = (i + 1) % designs.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvaluateTiny3);

}  // namespace

BENCHMARK_MAIN();
