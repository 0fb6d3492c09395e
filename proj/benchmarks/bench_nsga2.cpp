#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "aquafront/nsga2.hpp"
#include "aquafront/rng.hpp"
#include "helpers.hpp"

using namespace aquafront;

namespace {

std::vector<Individual> synthetic_population(const PipeNetwork& net, std::size_t n,
                                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Individual> pop(n);
    for (Individual& ind : pop) {
        ind.design = random_design(net, rng);
        ind.eval.cost = 50000.0 + rng.uniform01() * 200000.0;
        ind.eval.resilience = rng.uniform01();
        ind.eval.feasible = rng.uniform01() < 0.8;
        ind.eval.total_head_deficit = ind.eval.feasible ? 0.0 : rng.uniform01() * 10.0;
    }
    return pop;
}

void BM_RankPopulation(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    auto pop = synthetic_population(net, static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        auto work = pop;
        rank_population(work);
        benchmark::DoNotOptimize(work.data());
    }
}
BENCHMARK(BM_RankPopulation)->Arg(100)->Arg(200)->Arg(400);

void BM_EnvironmentalSelection(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto combined = synthetic_population(net, 2 * n, 2);
    for (auto _ : state) {
        auto survivors = environmental_selection(combined, n);
        benchmark::DoNotOptimize(survivors.data());
    }
}
BENCHMARK(BM_EnvironmentalSelection)->Arg(100)->Arg(200);

void BM_MakeChildren(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    auto pop = synthetic_population(net, 200, 3);
    rank_population(pop);
    OperatorParams ops;
    ops.p_m = ops.resolved_p_m(net.decision_count());
    Rng rng(4);
    for (auto _ : state) {
        auto children = make_children(pop, net, ops, rng);
        benchmark::DoNotOptimize(children.data());
    }
}
BENCHMARK(BM_MakeChildren);

void BM_SbxCrossover(benchmark::State& state) {
    PipeNetwork net = testutil::make_synth8();
    OperatorParams ops;
    ops.p_c = 1.0;
    Rng rng(5);
    DesignVector p1 = random_design(net, rng);
    DesignVector p2 = random_design(net, rng);
    for (auto _ : state) {
        auto pair = sbx_crossover(p1, p2, net, ops, rng);
        benchmark::DoNotOptimize(pair.first.genes.data());
    }
}
BENCHMARK(BM_SbxCrossover);

}  // namespace

BENCHMARK_MAIN();
