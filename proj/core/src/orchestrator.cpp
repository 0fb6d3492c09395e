#include "aquafront/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "aquafront/objectives.hpp"
#include "aquafront/rng.hpp"

namespace aquafront {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::A: return "A";
        case Scheme::B: return "B";
        case Scheme::C: return "C";
        case Scheme::D: return "D";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "A") return Scheme::A;
    if (s == "B") return Scheme::B;
    if (s == "C") return Scheme::C;
    if (s == "D") return Scheme::D;
    throw ConfigInvalid("unknown scheme '" + s + "' (expected A, B, C, or D)");
}

bool ls_fires(const LsSchedule& s, int gen) {
    if (gen < s.start_gen) return false;
    if (gen <= s.dense_until) return gen % s.dense_period == 0;
    return gen % s.sparse_period == 0;
}

void RunConfig::validate() const {
    if (population < 2 || population % 2 != 0)
        throw ConfigInvalid("population must be even and at least 2");
    if (generations < 0) throw ConfigInvalid("generations must be nonnegative");
    if (runs < 1) throw ConfigInvalid("runs must be at least 1");
    if (n_link < 1) throw ConfigInvalid("n_link must be at least 1");
    if (ls.dense_period < 1 || ls.sparse_period < 1)
        throw ConfigInvalid("local-search periods must be at least 1");
    if (ls.start_gen < 0) throw ConfigInvalid("local-search start generation must be nonnegative");
    if (coupling_start_gen < 0) throw ConfigInvalid("coupling start generation must be nonnegative");
    if (operators.p_c < 0.0 || operators.p_c > 1.0)
        throw ConfigInvalid("crossover rate must lie in [0, 1]");
    if (operators.p_m > 1.0) throw ConfigInvalid("mutation rate must lie in [0, 1]");
    if (operators.eta_c <= 0.0 || operators.eta_m <= 0.0)
        throw ConfigInvalid("distribution indices must be positive");
    if (!(archive.cell_widths[0] > 0.0) || !(archive.cell_widths[1] > 0.0))
        throw ConfigInvalid("archive cell widths must be positive");
    if (archive.max_occupancy < 1) throw ConfigInvalid("archive max occupancy must be at least 1");
    if (jobs < 0) throw ConfigInvalid("jobs must be nonnegative");
}

int count_ls_passes(const RunConfig& config) {
    int n = 0;
    for (int g = 1; g <= config.generations; ++g)
        if (ls_fires(config.ls, g)) ++n;
    return n;
}

std::vector<ArchiveEntry> merge_nd_sets(const std::vector<std::vector<ArchiveEntry>>& sets) {
    std::vector<ArchiveEntry> all;
    for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());

    std::sort(all.begin(), all.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
        if (a.eval.cost != b.eval.cost) return a.eval.cost < b.eval.cost;
        if (a.eval.resilience != b.eval.resilience) return a.eval.resilience > b.eval.resilience;
        return a.indices < b.indices;
    });

    // Ascending cost with descending resilience on ties: a member survives
    // exactly when it beats every cheaper survivor's resilience.
    std::vector<ArchiveEntry> kept;
    double best = -std::numeric_limits<double>::infinity();
    for (auto& e : all) {
        if (e.eval.resilience <= best) continue;
        best = e.eval.resilience;
        kept.push_back(std::move(e));
    }
    return kept;
}

RunResult run_single(const RunConfig& config, const PipeNetwork& net, int run_index) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    RunResult result;
    RunStats& stats = result.stats;
    stats.run_index = run_index;
    stats.seed = derive_run_seed(config.master_seed, run_index);

    std::atomic<std::uint64_t> fe{0};
    Evaluator evaluator(net, &fe);
    Rng rng(stats.seed);
    HypergridArchive archive(config.archive);
    const bool use_archive = config.scheme != Scheme::A;
    const bool use_ls = config.scheme == Scheme::C || config.scheme == Scheme::D;

    OperatorParams ops = config.operators;
    ops.p_m = ops.resolved_p_m(net.decision_count());

    auto offer = [&](const DesignVector& design, const Evaluation& eval) {
        if (!use_archive || !eval.feasible) return;
        InsertResult r = archive.try_insert({round_to_indices(design, net), eval});
        if (r.outcome == InsertOutcome::Inserted) ++stats.archive_inserted;
    };

    std::vector<Individual> pop(static_cast<std::size_t>(config.population));
    for (auto& ind : pop) {
        ind.design = random_design(net, rng);
        ind.eval = evaluator.evaluate(ind.design);
        offer(ind.design, ind.eval);
    }
    rank_population(pop);
    stats.archive_size_trace.push_back(archive.size());

    std::vector<DesignVector> children;
    for (int g = 1; g <= config.generations; ++g) {
        const bool coupled = config.scheme == Scheme::D && g >= config.coupling_start_gen &&
                             g % config.n_link == 0 && !archive.empty();
        if (coupled) {
            ++stats.coupling_events;
            children.clear();
            for (int i = 0; i < config.population; ++i) {
                ArchiveEntry drawn = archive.select_roulette(rng);
                DesignVector d;
                d.genes.reserve(drawn.indices.size());
                for (int idx : drawn.indices) d.genes.push_back(static_cast<double>(idx));
                children.push_back(std::move(d));
            }
        } else {
            children = make_children(pop, net, ops, rng);
        }

        std::vector<Individual> combined;
        combined.reserve(pop.size() + children.size());
        for (auto& ind : pop) combined.push_back(std::move(ind));
        for (auto& d : children) {
            Individual child;
            child.design = std::move(d);
            child.eval = evaluator.evaluate(child.design);
            offer(child.design, child.eval);
            combined.push_back(std::move(child));
        }
        pop = environmental_selection(std::move(combined),
                                      static_cast<std::size_t>(config.population));

        if (use_ls && ls_fires(config.ls, g) && !archive.empty()) {
            LsStats ls = local_search_pass(archive, evaluator, config.ls_subsample);
            ++stats.ls_passes;
            stats.ls_evaluations += ls.evaluations;
        }
        stats.archive_size_trace.push_back(archive.size());
    }

    if (config.scheme == Scheme::A) {
        std::vector<ArchiveEntry> front;
        for (const auto& ind : pop)
            if (ind.rank == 0 && ind.eval.feasible)
                front.push_back({round_to_indices(ind.design, net), ind.eval});
        result.nd_set = merge_nd_sets({front});  // sorts and deduplicates
    } else {
        result.nd_set = archive.snapshot();
    }

    result.final_population = std::move(pop);
    stats.fe_total = fe.load();
    stats.rejected_full_count = archive.rejected_full_count();
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

AggregateResult run_all(const RunConfig& config, const PipeNetwork& net) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    const int nr = config.runs;
    std::vector<RunResult> results(static_cast<std::size_t>(nr));

    int jobs = config.jobs > 0 ? config.jobs
                               : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, nr));

    if (jobs == 1) {
        for (int i = 0; i < nr; ++i) results[static_cast<std::size_t>(i)] = run_single(config, net, i);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= nr) return;
                try {
                    results[static_cast<std::size_t>(i)] = run_single(config, net, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    AggregateResult agg;
    std::vector<std::vector<ArchiveEntry>> sets;
    sets.reserve(results.size());
    for (auto& r : results) {
        agg.fe_grand_total += r.stats.fe_total;
        sets.push_back(std::move(r.nd_set));
        agg.per_run.push_back(std::move(r.stats));
    }
    agg.merged_nd_set = merge_nd_sets(sets);
    agg.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return agg;
}

}  // namespace aquafront
