#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "aquafront/errors.hpp"
#include "aquafront/network.hpp"

namespace aquafront {

constexpr double kHwCoefficient = 10.667;
constexpr double kHwFlowExp = 1.852;
constexpr double kHwDiamExp = 4.871;
constexpr double kWaterDensity = 1000.0;  // kg/m3
constexpr double kGravity = 9.81;         // m/s2
constexpr double kLowFlowThreshold = 1e-8;  // m3/s, linearized headloss below this
constexpr double kHeadTolerance = 1e-6;     // m
constexpr double kMassTolerance = 1e-6;     // m3/s
constexpr int kMaxIterations = 200;

// Signed Hazen-Williams headloss in metres. Positive flow loses head from
// `from` to `to`. Pure power law, no low-flow regularization.
double headloss_hw(double q_m3s, double length_m, double roughness, double diameter_m);

struct HydraulicState {
    std::map<std::string, double> node_heads;  // junctions and reservoirs, total head (m)
    std::map<std::string, double> pipe_flows;  // signed, positive in declared direction (m3/s)
    std::map<std::string, double> pump_flows;
    bool converged = false;
    int iterations = 0;
    double max_mass_residual = 0.0;  // m3/s over junctions
};

// Global-gradient (Todini) solver bound to one network. Precomputes per-option
// pipe resistances at construction; solve_raw reuses internal workspace and
// performs no heap allocation for networks small enough for the dense path.
// One instance is not safe for concurrent use; use one per thread.
class HydraulicSolver {
  public:
    explicit HydraulicSolver(const PipeNetwork& net);

    struct RawResult {
        bool converged = false;
        int iterations = 0;
        double max_mass_residual = 0.0;
    };

    // indices: one option index per pipe, in pipe declaration order.
    // junction_heads: net.junctions.size() slots; pipe_flows: net.pipes.size()
    // slots (absent pipes get 0); pump_flows: net.pumps.size() slots.
    // Throws Disconnected; convergence failure is reported, not thrown.
    RawResult solve_raw(const int* indices, double* junction_heads, double* pipe_flows,
                        double* pump_flows);

    HydraulicState solve(const std::vector<int>& indices);

    const PipeNetwork& network() const { return *net_; }

  private:
    const PipeNetwork* net_;
    int nj_ = 0, nr_ = 0, np_ = 0, npu_ = 0;

    // Global node ids: 0..nj-1 junctions, nj..nj+nr-1 reservoirs.
    std::vector<int> pipe_from_, pipe_to_, pump_from_, pump_to_;
    std::vector<double> res_head_, junction_elev_, junction_demand_, pump_power_;
    double max_res_head_ = 0.0;

    // Per pipe option data, flattened: slot r_off_[p] + option index.
    std::vector<int> r_off_;
    std::vector<double> r_flat_;   // HW resistance, <0 marks an absent option
    std::vector<double> q0_flat_;  // initial flow (0.3 m/s equivalent)

    // CSR adjacency over global nodes covering every pipe and pump.
    struct LinkRef {
        int other;
        int pipe;  // pipe index, or -1-pump_index for pumps
    };
    std::vector<int> adj_off_;
    std::vector<LinkRef> adj_;

    // Per-solve workspace.
    std::vector<double> r_;      // realized resistance per pipe, <0 absent
    std::vector<int> row_;       // junction -> system row, -1 excluded
    std::vector<int> sys_node_;  // system row -> junction
    std::vector<char> reached_;
    std::vector<int> queue_;
    std::vector<double> flow_, pump_q_;
    std::vector<double> y_link_, p_link_;  // GGA coefficients, pipes then pumps
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_, x_, prev_;
    Eigen::LDLT<Eigen::MatrixXd> ldlt_;

    double node_head(int node, const Eigen::VectorXd& x) const;
};

// One-shot convenience wrapper around HydraulicSolver.
HydraulicState solve_steady_state(const PipeNetwork& net, const std::vector<int>& indices);

}  // namespace aquafront
