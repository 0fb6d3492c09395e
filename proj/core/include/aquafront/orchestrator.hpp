#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aquafront/archive.hpp"
#include "aquafront/local_search.hpp"
#include "aquafront/network.hpp"
#include "aquafront/nsga2.hpp"

namespace aquafront {

enum class Scheme { A, B, C, D };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);  // throws ConfigInvalid

struct LsSchedule {
    int start_gen = 1000;
    int dense_until = 5000;
    int dense_period = 100;
    int sparse_period = 1000;
};

// True when the local-search schedule fires at generation gen (1-based).
bool ls_fires(const LsSchedule& schedule, int gen);

struct RunConfig {
    Scheme scheme = Scheme::A;
    int population = 200;  // N, must be even
    int generations = 10000;
    int runs = 20;  // N_r independent runs
    OperatorParams operators;
    int n_link = 100;  // coupling period (scheme D)
    int coupling_start_gen = 1000;
    LsSchedule ls;
    std::size_t ls_subsample = 0;  // 0: sweep the whole archive
    ArchiveParams archive;
    std::uint64_t master_seed = 0;
    int jobs = 0;  // run-level parallelism; 0 = hardware concurrency

    void validate() const;  // throws ConfigInvalid
};

// Scheduled LS passes over generations 1..generations (46 for the default
// schedule at 10,000 generations).
int count_ls_passes(const RunConfig& config);

struct RunStats {
    int run_index = 0;
    std::uint64_t seed = 0;  // derived per-run seed
    std::uint64_t fe_total = 0;
    std::uint64_t ls_evaluations = 0;
    int ls_passes = 0;        // executed (a scheduled pass is skipped while the archive is empty)
    int coupling_events = 0;
    std::uint64_t archive_inserted = 0;
    std::uint64_t rejected_full_count = 0;
    std::vector<std::size_t> archive_size_trace;  // after init, then after each generation
    double wall_seconds = 0.0;
};

struct RunResult {
    std::vector<ArchiveEntry> nd_set;  // ascending cost, duplicate-free
    std::vector<Individual> final_population;
    RunStats stats;
};

struct AggregateResult {
    std::vector<ArchiveEntry> merged_nd_set;
    std::vector<RunStats> per_run;
    std::uint64_t fe_grand_total = 0;
    double wall_seconds = 0.0;
};

// Concatenates ND sets, drops dominated members and objective-vector
// duplicates, and returns the survivors in ascending cost order.
std::vector<ArchiveEntry> merge_nd_sets(const std::vector<std::vector<ArchiveEntry>>& sets);

// One independent run. The RNG stream is derived from (master_seed,
// run_index); identical inputs give identical output on one platform.
RunResult run_single(const RunConfig& config, const PipeNetwork& net, int run_index);

// All N_r runs (parallel across jobs) plus the merged ND set.
AggregateResult run_all(const RunConfig& config, const PipeNetwork& net);

}  // namespace aquafront
