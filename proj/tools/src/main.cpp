#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aquafront/errors.hpp"
#include "aquafront/front_metrics.hpp"
#include "aquafront/hydraulics.hpp"
#include "aquafront/network.hpp"
#include "aquafront/objectives.hpp"
#include "aquafront/orchestrator.hpp"
#include "aquafront/rng.hpp"
#include "config_json.hpp"

#ifndef AQUAFRONT_VERSION
#define AQUAFRONT_VERSION "0.0.0"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aquafront;

constexpr int kExitConfig = 2;   // bad flags or configuration
constexpr int kExitInput = 3;    // unparseable or invalid input documents
constexpr int kExitRuntime = 4;  // I/O and solver failures

struct NetworkArgs {
    std::string network;
    std::string costs;
    std::string config;
};

void add_network_options(CLI::App& cmd, NetworkArgs& args) {
    cmd.add_option("--network", args.network, "INP network document")->required();
    cmd.add_option("--costs", args.costs, "cost table CSV, installed as the table named \"default\"");
    cmd.add_option("--net-config", args.config,
                   "JSON sidecar: units, minimum heads, option tables, archive grid");
}

struct RunArgs {
    NetworkArgs net;
    std::string scheme = "A";
    std::string preset;
    int population = 200;
    int generations = 10000;
    int runs = 20;
    int n_link = 100;
    int coupling_start = 1000;
    double p_c = 0.9;
    double eta_c = 15.0;
    double p_m = -1.0;
    double eta_m = 7.0;
    int ls_start = 1000;
    int ls_dense_until = 5000;
    int ls_dense_period = 100;
    int ls_sparse_period = 1000;
    std::size_t ls_subsample = 0;
    std::vector<double> cell_widths;
    int max_occupancy = 64;
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string out_dir = "out";
};

struct CompareArgs {
    std::string front1;
    std::string front2;
    double tol = 1e-9;
    bool decision_space = false;
    std::uint64_t fe1 = 0;
    std::uint64_t fe2 = 0;
    std::string json_out;
};

struct ValidateArgs {
    NetworkArgs net;
    std::vector<int> design;
    bool heads = false;
};

// Paper-style per-network settings; the scheme stays whatever --scheme says.
struct Preset {
    int population;
    int generations;
    int runs;
    int n_link;
    int coupling_start;
};

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table = {
        {"han", {200, 10000, 30, 100, 1000}},
        {"bla", {200, 15000, 20, 100, 1000}},
        {"nyt", {200, 15000, 30, 100, 1000}},
        {"goy", {200, 15000, 30, 100, 1000}},
    };
    return table;
}

std::uint64_t resolve_seed(const CLI::App& cmd, std::uint64_t flag_value) {
    if (cmd.count("--seed")) return flag_value;
    if (const char* env = std::getenv("AQUAFRONT_SEED")) {
        std::uint64_t value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end)
            throw ConfigInvalid("AQUAFRONT_SEED must be an unsigned integer");
        return value;
    }
    return 1;
}

RunConfig build_run_config(const CLI::App& cmd, const RunArgs& args,
                           const std::optional<ArchiveParams>& sidecar, const PipeNetwork& net) {
    RunConfig config;
    std::string scheme = args.scheme;
    std::transform(scheme.begin(), scheme.end(), scheme.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    config.scheme = scheme_from_string(scheme);

    if (!args.preset.empty()) {
        const Preset& preset = presets().at(args.preset);
        config.population = preset.population;
        config.generations = preset.generations;
        config.runs = preset.runs;
        config.n_link = preset.n_link;
        config.coupling_start_gen = preset.coupling_start;
    }
    if (cmd.count("--pop")) config.population = args.population;
    if (cmd.count("--gens")) config.generations = args.generations;
    if (cmd.count("--runs")) config.runs = args.runs;
    if (cmd.count("--nlink")) config.n_link = args.n_link;
    if (cmd.count("--coupling-start")) config.coupling_start_gen = args.coupling_start;

    config.operators.p_c = args.p_c;
    config.operators.eta_c = args.eta_c;
    config.operators.p_m = args.p_m;
    config.operators.eta_m = args.eta_m;
    config.ls.start_gen = args.ls_start;
    config.ls.dense_until = args.ls_dense_until;
    config.ls.dense_period = args.ls_dense_period;
    config.ls.sparse_period = args.ls_sparse_period;
    config.ls_subsample = args.ls_subsample;

    config.archive = sidecar ? *sidecar : cli::derive_archive_params(net);
    if (cmd.count("--cell-widths")) config.archive.cell_widths = {args.cell_widths[0], args.cell_widths[1]};
    if (cmd.count("--max-occupancy")) config.archive.max_occupancy = args.max_occupancy;

    config.master_seed = resolve_seed(cmd, args.seed);
    config.jobs = args.jobs;
    config.validate();
    return config;
}

json manifest_json(const RunArgs& args, const RunConfig& config, const PipeNetwork& net) {
    json seeds = json::array();
    for (int run = 0; run < config.runs; ++run) seeds.push_back(derive_run_seed(config.master_seed, run));
    return json{
        {"tool", "aquafront"},
        {"version", AQUAFRONT_VERSION},
        {"command", "run"},
        {"inputs",
         {{"network", args.net.network},
          {"costs", args.net.costs},
          {"net_config", args.net.config},
          {"preset", args.preset}}},
        {"scheme", to_string(config.scheme)},
        {"population", config.population},
        {"generations", config.generations},
        {"runs", config.runs},
        {"n_link", config.n_link},
        {"coupling_start_gen", config.coupling_start_gen},
        {"operators",
         {{"p_c", config.operators.p_c},
          {"eta_c", config.operators.eta_c},
          {"p_m", config.operators.resolved_p_m(net.decision_count())},
          {"eta_m", config.operators.eta_m}}},
        {"local_search",
         {{"start_gen", config.ls.start_gen},
          {"dense_until", config.ls.dense_until},
          {"dense_period", config.ls.dense_period},
          {"sparse_period", config.ls.sparse_period},
          {"subsample", config.ls_subsample}}},
        {"archive",
         {{"cell_widths", {config.archive.cell_widths[0], config.archive.cell_widths[1]}},
          {"origin", {config.archive.origin[0], config.archive.origin[1]}},
          {"max_occupancy", config.archive.max_occupancy}}},
        {"master_seed", config.master_seed},
        {"run_seeds", seeds},
        {"jobs", config.jobs},
    };
}

json stats_json(const AggregateResult& result) {
    json per_run = json::array();
    for (const RunStats& stats : result.per_run) {
        per_run.push_back({
            {"run_index", stats.run_index},
            {"seed", stats.seed},
            {"fe_total", stats.fe_total},
            {"ls_evaluations", stats.ls_evaluations},
            {"ls_passes", stats.ls_passes},
            {"coupling_events", stats.coupling_events},
            {"archive_inserted", stats.archive_inserted},
            {"rejected_full_count", stats.rejected_full_count},
            {"final_archive_size",
             stats.archive_size_trace.empty() ? 0 : stats.archive_size_trace.back()},
            {"wall_seconds", stats.wall_seconds},
        });
    }
    return json{
        {"fe_grand_total", result.fe_grand_total},
        {"wall_seconds", result.wall_seconds},
        {"front_size", result.merged_nd_set.size()},
        {"per_run", per_run},
    };
}

int cmd_run(const CLI::App& cmd, const RunArgs& args) {
    cli::NetworkBundle bundle = cli::load_bundle(args.net.network, args.net.costs, args.net.config);
    RunConfig config = build_run_config(cmd, args, bundle.archive, bundle.net);

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoFailure("cannot create " + args.out_dir);

    AggregateResult result = run_all(config, bundle.net);

    for (const RunStats& stats : result.per_run) {
        std::cout << "run " << stats.run_index << ": seed " << stats.seed << "  fe " << stats.fe_total
                  << "  ls " << stats.ls_passes << "/" << stats.ls_evaluations << "  coupling "
                  << stats.coupling_events << "  archive "
                  << (stats.archive_size_trace.empty() ? 0 : stats.archive_size_trace.back())
                  << "  wall " << stats.wall_seconds << "s\n";
    }
    std::cout << "merged front: " << result.merged_nd_set.size() << " members, "
              << result.fe_grand_total << " evaluations, " << result.wall_seconds << "s\n";

    const std::vector<FrontPoint> front = to_front(result.merged_nd_set);
    const fs::path out(args.out_dir);
    export_front(front, FrontFormat::Csv, (out / "front.csv").string());
    export_front(front, FrontFormat::Svg, (out / "front.svg").string());
    cli::write_text_atomic((out / "manifest.json").string(),
                           manifest_json(args, config, bundle.net).dump(2) + "\n");
    cli::write_text_atomic((out / "stats.json").string(), stats_json(result).dump(2) + "\n");
    std::cout << "wrote front.csv front.svg manifest.json stats.json under " << args.out_dir << "\n";
    return 0;
}

int cmd_compare(const CLI::App& cmd, const CompareArgs& args) {
    const std::vector<FrontPoint> pf1 = load_front_csv(args.front1);
    const std::vector<FrontPoint> pf2 = load_front_csv(args.front2);
    CompareOptions options;
    options.tol = args.tol;
    options.match = args.decision_space ? MatchSpace::Decision : MatchSpace::Objective;
    ComparisonReport report = compare_fronts(pf1, pf2, options);
    if (cmd.count("--fe1")) report.fe1 = args.fe1;
    if (cmd.count("--fe2")) report.fe2 = args.fe2;

    std::cout << "front 1 (" << args.front1 << "): total " << report.n1_total << "  accepted "
              << report.n1_accepted << "  rejected " << report.n1_rejected << "  unique "
              << report.n1_unique << "\n";
    std::cout << "front 2 (" << args.front2 << "): total " << report.n2_total << "  accepted "
              << report.n2_accepted << "  rejected " << report.n2_rejected << "  unique "
              << report.n2_unique << "\n";
    std::cout << "common to both: " << report.n_common << "\n";
    if (report.fe1 && report.fe2)
        std::cout << "function evaluations: " << *report.fe1 << " vs " << *report.fe2 << "\n";

    if (!args.json_out.empty()) {
        json doc{
            {"front1", {{"path", args.front1},
                        {"total", report.n1_total},
                        {"accepted", report.n1_accepted},
                        {"rejected", report.n1_rejected},
                        {"unique", report.n1_unique}}},
            {"front2", {{"path", args.front2},
                        {"total", report.n2_total},
                        {"accepted", report.n2_accepted},
                        {"rejected", report.n2_rejected},
                        {"unique", report.n2_unique}}},
            {"common", report.n_common},
        };
        if (report.fe1) doc["front1"]["fe"] = *report.fe1;
        if (report.fe2) doc["front2"]["fe"] = *report.fe2;
        cli::write_text_atomic(args.json_out, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_validate(const ValidateArgs& args) {
    cli::NetworkBundle bundle = cli::load_bundle(args.net.network, args.net.costs, args.net.config);
    const PipeNetwork& net = bundle.net;

    std::cout << "network: " << net.junctions.size() << " junctions, " << net.reservoirs.size()
              << " reservoirs, " << net.pipes.size() << " pipes, " << net.pumps.size() << " pumps\n";
    std::cout << "decision variables: " << net.decision_count() << "\n";
    double log_designs = 0.0;
    std::cout << "options per pipe:";
    for (const Pipe& pipe : net.pipes) {
        const std::size_t k = net.table_for(pipe).options.size();
        log_designs += std::log10(static_cast<double>(k));
        std::cout << " " << k;
    }
    std::cout << "\ndesign space: 10^" << log_designs << " designs\n";

    if (args.design.empty()) return 0;
    if (args.design.size() != net.decision_count())
        throw ConfigInvalid("--design needs " + std::to_string(net.decision_count()) +
                            " indices, got " + std::to_string(args.design.size()));
    for (std::size_t k = 0; k < args.design.size(); ++k) {
        const std::size_t n_options = net.table_for(net.pipes[k]).options.size();
        if (args.design[k] < 0 || static_cast<std::size_t>(args.design[k]) >= n_options)
            throw ConfigInvalid("--design index for pipe " + net.pipes[k].id + " must lie in [0, " +
                                std::to_string(n_options - 1) + "]");
    }

    Evaluator evaluator(net);
    const Evaluation eval = evaluator.evaluate_indices(args.design);
    std::cout << "cost: " << eval.cost << "\n";
    std::cout << "resilience: " << eval.resilience << "\n";
    std::cout << "feasible: " << (eval.feasible ? "yes" : "no") << "\n";
    std::cout << "head deficit: " << eval.total_head_deficit << " m\n";

    if (args.heads) {
        const HydraulicState state = solve_steady_state(net, args.design);
        std::cout << "solver: " << (state.converged ? "converged" : "did not converge") << " in "
                  << state.iterations << " iterations, max mass residual " << state.max_mass_residual
                  << " m3/s\n";
        std::cout << "heads (m):\n";
        for (const auto& [node, head] : state.node_heads) std::cout << "  " << node << "  " << head << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aquafront: archive-assisted multi-objective water network design"};
    app.set_version_flag("--version", AQUAFRONT_VERSION);
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "optimize a network and export the merged front");
    add_network_options(*run_cmd, run_args.net);
    run_cmd->add_option("--scheme", run_args.scheme, "A plain, B +archive, C +local search, D +coupling")
        ->check(CLI::IsMember({"A", "B", "C", "D", "a", "b", "c", "d"}));
    run_cmd->add_option("--preset", run_args.preset, "per-network settings: han, bla, nyt, goy")
        ->check(CLI::IsMember({"han", "bla", "nyt", "goy"}));
    run_cmd->add_option("--pop", run_args.population, "population size N (even)");
    run_cmd->add_option("--gens", run_args.generations, "generations per run");
    run_cmd->add_option("--runs", run_args.runs, "independent runs N_r");
    run_cmd->add_option("--nlink", run_args.n_link, "archive coupling period (scheme D)");
    run_cmd->add_option("--coupling-start", run_args.coupling_start, "first generation coupling may fire");
    run_cmd->add_option("--pc", run_args.p_c, "crossover probability");
    run_cmd->add_option("--eta-c", run_args.eta_c, "SBX distribution index");
    run_cmd->add_option("--pm", run_args.p_m, "mutation probability (negative: 1/n)");
    run_cmd->add_option("--eta-m", run_args.eta_m, "mutation distribution index");
    run_cmd->add_option("--ls-start", run_args.ls_start, "first generation local search may fire");
    run_cmd->add_option("--ls-dense-until", run_args.ls_dense_until, "last generation of the dense phase");
    run_cmd->add_option("--ls-dense-period", run_args.ls_dense_period, "dense-phase period");
    run_cmd->add_option("--ls-sparse-period", run_args.ls_sparse_period, "sparse-phase period");
    run_cmd->add_option("--ls-subsample", run_args.ls_subsample,
                        "archive members probed per pass (0: all)");
    run_cmd->add_option("--cell-widths", run_args.cell_widths, "hypergrid cell widths: cost resilience")
        ->expected(2);
    run_cmd->add_option("--max-occupancy", run_args.max_occupancy, "hypergrid cell capacity");
    run_cmd->add_option("--seed", run_args.seed, "master seed (also AQUAFRONT_SEED)");
    run_cmd->add_option("--jobs", run_args.jobs, "parallel runs (0: hardware)");
    run_cmd->add_option("--out", run_args.out_dir, "output directory");

    CompareArgs compare_args;
    CLI::App* compare_cmd = app.add_subcommand("compare", "cross-domination report for two front CSVs");
    compare_cmd->add_option("front1", compare_args.front1, "first front CSV")->required();
    compare_cmd->add_option("front2", compare_args.front2, "second front CSV")->required();
    compare_cmd->add_option("--tol", compare_args.tol, "relative tolerance for objective matching");
    compare_cmd->add_flag("--decision-space", compare_args.decision_space,
                          "match common members by index vectors instead of objectives");
    compare_cmd->add_option("--fe1", compare_args.fe1, "evaluations behind front 1 (reported only)");
    compare_cmd->add_option("--fe2", compare_args.fe2, "evaluations behind front 2 (reported only)");
    compare_cmd->add_option("--json", compare_args.json_out, "also write the report as JSON");

    ValidateArgs validate_args;
    CLI::App* validate_cmd = app.add_subcommand("validate", "parse a network; optionally price one design");
    add_network_options(*validate_cmd, validate_args.net);
    validate_cmd->add_option("--design", validate_args.design, "option indices, comma separated")
        ->delimiter(',');
    validate_cmd->add_flag("--heads", validate_args.heads, "print solved heads for --design");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(*run_cmd, run_args);
        if (compare_cmd->parsed()) return cmd_compare(*compare_cmd, compare_args);
        return cmd_validate(validate_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InputNotAFront& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConfigInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
