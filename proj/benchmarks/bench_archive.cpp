#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "aquafront/archive.hpp"
#include "aquafront/rng.hpp"

using namespace aquafront;

namespace {

// Deterministic stream with all four insert outcomes represented.
std::vector<ArchiveEntry> insert_stream(std::size_t n) {
    Rng rng(777);
    std::vector<ArchiveEntry> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int a = static_cast<int>(rng.below(60));
        const int b = static_cast<int>(rng.below(60));
        ArchiveEntry e;
        e.indices = {a, b};
        e.eval.cost = 1000.0 * a + b;
        e.eval.resilience =
            0.01 * a + 0.00015 * b - 0.002 * static_cast<double>((3 * a + 5 * b) % 11) / 11.0;
        e.eval.feasible = true;
        out.push_back(std::move(e));
    }
    return out;
}

void BM_TryInsert(benchmark::State& state) {
    const auto stream = insert_stream(static_cast<std::size_t>(state.range(0)));
    ArchiveParams params;
    params.cell_widths = {400.0, 0.003};
    params.max_occupancy = 4;
    for (auto _ : state) {
        HypergridArchive archive(params);
        for (const ArchiveEntry& e : stream) {
            InsertResult r = archive.try_insert(e);
            benchmark::DoNotOptimize(r.outcome);
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TryInsert)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SelectRoulette(benchmark::State& state) {
    ArchiveParams params;
    params.cell_widths = {400.0, 0.003};
    params.max_occupancy = 8;
    HypergridArchive archive(params);
    for (const ArchiveEntry& e : insert_stream(100000)) archive.try_insert(e);

    Rng rng(11);
    for (auto _ : state) {
        ArchiveEntry drawn = archive.select_roulette(rng);
        benchmark::DoNotOptimize(drawn.eval.cost);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SelectRoulette);

void BM_Snapshot(benchmark::State& state) {
    ArchiveParams params;
    params.cell_widths = {400.0, 0.003};
    params.max_occupancy = 8;
    HypergridArchive archive(params);
    for (const ArchiveEntry& e : insert_stream(100000)) archive.try_insert(e);

    for (auto _ : state) {
        auto snap = archive.snapshot();
        benchmark::DoNotOptimize(snap.data());
    }
}
BENCHMARK(BM_Snapshot);

}  // namespace

BENCHMARK_MAIN();
