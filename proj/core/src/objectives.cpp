#include "aquafront/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aquafront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void endpoint_codes(const PipeNetwork& net, std::vector<int>& pipe_from,
                    std::vector<int>& pipe_to, std::vector<int>& pump_from,
                    std::vector<int>& pump_to) {
    auto code = [&](const std::string& id) {
        if (int j = net.junction_index(id); j >= 0) return j;
        return -1 - net.reservoir_index(id);
    };
    for (const auto& p : net.pipes) {
        pipe_from.push_back(code(p.from));
        pipe_to.push_back(code(p.to));
    }
    for (const auto& p : net.pumps) {
        pump_from.push_back(code(p.from));
        pump_to.push_back(code(p.to));
    }
}

// Shared Prasad-Park evaluation over raw solution arrays. Scratch vectors are
// resized in place so repeat callers allocate nothing.
double resilience_core(const PipeNetwork& net, const int* indices, const double* heads,
                       const double* pipe_flows, const double* pump_flows,
                       const std::vector<int>& pipe_from, const std::vector<int>& pipe_to,
                       const std::vector<int>& pump_from, const std::vector<int>& pump_to,
                       std::vector<double>& sum_d, std::vector<double>& max_d,
                       std::vector<int>& cnt, std::vector<double>& res_out) {
    const std::size_t nj = net.junctions.size();
    const std::size_t nr = net.reservoirs.size();
    sum_d.assign(nj, 0.0);
    max_d.assign(nj, 0.0);
    cnt.assign(nj, 0);
    res_out.assign(nr, 0.0);

    for (std::size_t k = 0; k < net.pipes.size(); ++k) {
        int from = pipe_from[k], to = pipe_to[k];
        double q = pipe_flows[k];
        if (from < 0) res_out[static_cast<std::size_t>(-1 - from)] += q;
        if (to < 0) res_out[static_cast<std::size_t>(-1 - to)] -= q;

        double d = net.table_for(net.pipes[k]).options[static_cast<std::size_t>(indices[k])]
                       .diameter_m;
        if (d <= 0.0) continue;
        for (int node : {from, to}) {
            if (node < 0) continue;
            auto j = static_cast<std::size_t>(node);
            sum_d[j] += d;
            max_d[j] = std::max(max_d[j], d);
            ++cnt[j];
        }
    }
    for (std::size_t k = 0; k < net.pumps.size(); ++k) {
        if (pump_from[k] < 0) res_out[static_cast<std::size_t>(-1 - pump_from[k])] += pump_flows[k];
        if (pump_to[k] < 0) res_out[static_cast<std::size_t>(-1 - pump_to[k])] -= pump_flows[k];
    }

    double numerator = 0.0;
    double required_sum = 0.0;
    for (std::size_t j = 0; j < nj; ++j) {
        double q = net.junctions[j].demand_m3s;
        if (q <= 0.0) continue;
        double h_req = net.junctions[j].required_head_m();
        double uniformity = cnt[j] > 0 ? sum_d[j] / (cnt[j] * max_d[j]) : 0.0;
        numerator += uniformity * q * (heads[j] - h_req);
        required_sum += q * h_req;
    }

    double supplied = 0.0;
    for (std::size_t r = 0; r < nr; ++r) supplied += res_out[r] * net.reservoirs[r].head_m;
    for (const auto& p : net.pumps) supplied += p.power_w / (kWaterDensity * kGravity);

    double denominator = supplied - required_sum;
    if (denominator <= 0.0)
        throw DegenerateDenominator("resilience denominator is not positive");
    return numerator / denominator;
}

}  // namespace

double cost(const PipeNetwork& net, const std::vector<int>& indices) {
    double total = 0.0;
    for (std::size_t k = 0; k < net.pipes.size(); ++k) {
        const auto& option =
            net.table_for(net.pipes[k]).options[static_cast<std::size_t>(indices[k])];
        total += option.unit_cost * net.pipes[k].length_m;
    }
    return total;
}

double resilience(const PipeNetwork& net, const std::vector<int>& indices,
                  const HydraulicState& state) {
    std::vector<int> pipe_from, pipe_to, pump_from, pump_to;
    endpoint_codes(net, pipe_from, pipe_to, pump_from, pump_to);

    std::vector<double> heads(net.junctions.size());
    for (std::size_t j = 0; j < net.junctions.size(); ++j)
        heads[j] = state.node_heads.at(net.junctions[j].id);
    std::vector<double> pipe_flows(net.pipes.size());
    for (std::size_t k = 0; k < net.pipes.size(); ++k)
        pipe_flows[k] = state.pipe_flows.at(net.pipes[k].id);
    std::vector<double> pump_flows(net.pumps.size());
    for (std::size_t k = 0; k < net.pumps.size(); ++k)
        pump_flows[k] = state.pump_flows.at(net.pumps[k].id);

    std::vector<double> sum_d, max_d, res_out;
    std::vector<int> cnt;
    return resilience_core(net, indices.data(), heads.data(), pipe_flows.data(),
                           pump_flows.data(), pipe_from, pipe_to, pump_from, pump_to, sum_d,
                           max_d, cnt, res_out);
}

Evaluator::Evaluator(const PipeNetwork& net, std::atomic<std::uint64_t>* fe_counter)
    : net_(&net), fe_counter_(fe_counter), solver_(net) {
    for (const auto& p : net.pipes) {
        cost_off_.push_back(static_cast<int>(cost_flat_.size()));
        for (const auto& opt : net.table_for(p).options)
            cost_flat_.push_back(opt.unit_cost * p.length_m);
    }
    endpoint_codes(net, pipe_from_, pipe_to_, pump_from_, pump_to_);
    heads_.resize(net.junctions.size());
    flows_.resize(net.pipes.size());
    pump_flows_.resize(net.pumps.size());
}

Evaluation Evaluator::evaluate(const DesignVector& d) {
    round_to_indices(d, *net_, idx_);
    return score(idx_);
}

Evaluation Evaluator::evaluate_indices(const std::vector<int>& indices) {
    return score(indices);
}

Evaluation Evaluator::score(const std::vector<int>& indices) {
    if (fe_counter_) fe_counter_->fetch_add(1, std::memory_order_relaxed);

    Evaluation ev;
    ev.cost = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k)
        ev.cost += cost_flat_[static_cast<std::size_t>(cost_off_[k]) +
                              static_cast<std::size_t>(indices[k])];

    auto fail = [&ev] {
        ev.feasible = false;
        ev.total_head_deficit = kInf;
        ev.resilience = -kInf;
        return ev;
    };

    HydraulicSolver::RawResult raw;
    try {
        raw = solver_.solve_raw(indices.data(), heads_.data(), flows_.data(),
                                pump_flows_.data());
    } catch (const Disconnected&) {
        return fail();
    }
    if (!raw.converged) return fail();

    double deficit = 0.0;
    for (std::size_t j = 0; j < net_->junctions.size(); ++j)
        deficit += std::max(0.0, net_->junctions[j].required_head_m() - heads_[j]);
    ev.total_head_deficit = deficit;
    ev.feasible = deficit == 0.0;

    try {
        ev.resilience = resilience_core(*net_, indices.data(), heads_.data(), flows_.data(),
                                        pump_flows_.data(), pipe_from_, pipe_to_, pump_from_,
                                        pump_to_, sum_d_, max_d_, cnt_, res_out_);
    } catch (const DegenerateDenominator&) {
        return fail();
    }
    return ev;
}

}  // namespace aquafront
