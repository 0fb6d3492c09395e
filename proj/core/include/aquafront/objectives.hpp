#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "aquafront/hydraulics.hpp"
#include "aquafront/network.hpp"

namespace aquafront {

struct Evaluation {
    double cost = 0.0;
    double resilience = 0.0;
    bool feasible = false;
    double total_head_deficit = 0.0;  // m; +inf when the solve failed
    int fe_count = 1;                 // hydraulic solves consumed (always 1)
};

// Capital cost: sum over pipes of unit cost times length. Zero-diameter
// options cost nothing.
double cost(const PipeNetwork& net, const std::vector<int>& indices);

// Prasad-Park network resilience for a solved state:
//   I_n = sum_j C_j q_j (h_j - h_j^req)
//       / [(sum_r Q_r H_r + sum_k P_k/(rho g)) - sum_j q_j h_j^req]
// over demand junctions j, with diameter uniformity
//   C_j = (sum of incident realized diameters) / (n_j * max incident diameter).
// Throws DegenerateDenominator when the denominator is not positive.
double resilience(const PipeNetwork& net, const std::vector<int>& indices,
                  const HydraulicState& state);

// Rounds a design, runs one hydraulic solve, and scores it. Solve failures
// (disconnection, non-convergence, degenerate resilience) are encoded as an
// infeasible Evaluation with total_head_deficit = +inf and resilience = -inf,
// never thrown. Each call bumps the attached function-evaluation counter by 1.
class Evaluator {
  public:
    explicit Evaluator(const PipeNetwork& net, std::atomic<std::uint64_t>* fe_counter = nullptr);

    Evaluation evaluate(const DesignVector& d);
    Evaluation evaluate_indices(const std::vector<int>& indices);

    const PipeNetwork& network() const { return *net_; }

  private:
    Evaluation score(const std::vector<int>& indices);

    const PipeNetwork* net_;
    std::atomic<std::uint64_t>* fe_counter_;
    HydraulicSolver solver_;
    std::vector<double> cost_flat_;  // option cost * length, one slot per (pipe, option)
    std::vector<int> cost_off_;
    // Endpoint codes: junction index, or -1-r for reservoir r.
    std::vector<int> pipe_from_, pipe_to_, pump_from_, pump_to_;
    std::vector<double> heads_, flows_, pump_flows_;
    std::vector<int> idx_;
    // Resilience scratch, reused across calls.
    std::vector<double> sum_d_, max_d_, res_out_;
    std::vector<int> cnt_;
};

}  // namespace aquafront
