#include "aquafront/hydraulics.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cassert>
#include <cmath>

namespace aquafront {

namespace {
constexpr int kDenseLimit = 200;
constexpr double kPi = 3.14159265358979323846;
constexpr double kInitVelocity = 0.3;    // m/s
constexpr double kInitPumpFlow = 0.01;   // m3/s
}  // namespace

double headloss_hw(double q_m3s, double length_m, double roughness, double diameter_m) {
    if (q_m3s == 0.0) return 0.0;
    if (diameter_m <= 0.0)
        throw NonphysicalPipe("flow through a pipe with nonpositive diameter");
    double r = kHwCoefficient * length_m /
               (std::pow(roughness, kHwFlowExp) * std::pow(diameter_m, kHwDiamExp));
    return r * q_m3s * std::pow(std::fabs(q_m3s), kHwFlowExp - 1.0);
}

HydraulicSolver::HydraulicSolver(const PipeNetwork& net) : net_(&net) {
    // validate() fills the id indexes and gene bounds this solver reads.
    if (net.gene_upper_bounds().size() != net.pipes.size())
        throw ConfigInvalid("network must be validated before building a solver");
    nj_ = static_cast<int>(net.junctions.size());
    nr_ = static_cast<int>(net.reservoirs.size());
    np_ = static_cast<int>(net.pipes.size());
    npu_ = static_cast<int>(net.pumps.size());

    junction_elev_.reserve(nj_);
    junction_demand_.reserve(nj_);
    for (const auto& j : net.junctions) {
        junction_elev_.push_back(j.elevation_m);
        junction_demand_.push_back(j.demand_m3s);
    }
    res_head_.reserve(nr_);
    for (const auto& r : net.reservoirs) res_head_.push_back(r.head_m);
    max_res_head_ = *std::max_element(res_head_.begin(), res_head_.end());

    auto node_id = [&](const std::string& id) {
        if (auto j = net.junction_index(id); j >= 0) return j;
        return nj_ + net.reservoir_index(id);
    };

    r_off_.reserve(np_ + 1);
    for (const auto& p : net.pipes) {
        pipe_from_.push_back(node_id(p.from));
        pipe_to_.push_back(node_id(p.to));
        r_off_.push_back(static_cast<int>(r_flat_.size()));
        for (const auto& opt : net.table_for(p).options) {
            if (opt.diameter_m > 0.0) {
                r_flat_.push_back(kHwCoefficient * p.length_m /
                                  (std::pow(p.roughness, kHwFlowExp) *
                                   std::pow(opt.diameter_m, kHwDiamExp)));
                q0_flat_.push_back(kInitVelocity * kPi * opt.diameter_m * opt.diameter_m / 4.0);
            } else {
                r_flat_.push_back(-1.0);
                q0_flat_.push_back(0.0);
            }
        }
    }
    r_off_.push_back(static_cast<int>(r_flat_.size()));
    for (const auto& p : net.pumps) {
        pump_from_.push_back(node_id(p.from));
        pump_to_.push_back(node_id(p.to));
        pump_power_.push_back(p.power_w);
    }

    int nodes = nj_ + nr_;
    std::vector<int> degree(nodes, 0);
    for (int k = 0; k < np_; ++k) {
        ++degree[pipe_from_[k]];
        ++degree[pipe_to_[k]];
    }
    for (int k = 0; k < npu_; ++k) {
        ++degree[pump_from_[k]];
        ++degree[pump_to_[k]];
    }
    adj_off_.assign(nodes + 1, 0);
    for (int n = 0; n < nodes; ++n) adj_off_[n + 1] = adj_off_[n] + degree[n];
    adj_.resize(adj_off_[nodes]);
    std::vector<int> fill(adj_off_.begin(), adj_off_.end() - 1);
    for (int k = 0; k < np_; ++k) {
        adj_[fill[pipe_from_[k]]++] = {pipe_to_[k], k};
        adj_[fill[pipe_to_[k]]++] = {pipe_from_[k], k};
    }
    for (int k = 0; k < npu_; ++k) {
        adj_[fill[pump_from_[k]]++] = {pump_to_[k], -1 - k};
        adj_[fill[pump_to_[k]]++] = {pump_from_[k], -1 - k};
    }

    r_.resize(np_);
    row_.resize(nj_);
    sys_node_.reserve(nj_);
    reached_.resize(nodes);
    queue_.resize(nodes);
    flow_.resize(np_);
    pump_q_.resize(npu_);
    y_link_.resize(np_ + npu_);
    p_link_.resize(np_ + npu_);
    if (nj_ <= kDenseLimit) {
        a_.resize(nj_, nj_);
        b_.resize(nj_);
        x_.resize(nj_);
        prev_.resize(nj_);
    } else {
        b_.resize(nj_);
        x_.resize(nj_);
        prev_.resize(nj_);
    }
}

double HydraulicSolver::node_head(int node, const Eigen::VectorXd& x) const {
    if (node >= nj_) return res_head_[node - nj_];
    int row = row_[node];
    return row >= 0 ? x[row] : junction_elev_[node];
}

HydraulicSolver::RawResult HydraulicSolver::solve_raw(const int* indices, double* junction_heads,
                                                      double* pipe_flows, double* pump_flows) {
    // Realized resistances; r < 0 marks an absent pipe.
    for (int k = 0; k < np_; ++k) {
        assert(indices[k] >= 0 && r_off_[k] + indices[k] < r_off_[k + 1]);
        r_[k] = r_flat_[r_off_[k] + indices[k]];
    }

    // Reachability from the reservoir set over realized links.
    std::fill(reached_.begin(), reached_.end(), char(0));
    int qhead = 0, qtail = 0;
    for (int r = 0; r < nr_; ++r) {
        reached_[nj_ + r] = 1;
        queue_[qtail++] = nj_ + r;
    }
    while (qhead < qtail) {
        int n = queue_[qhead++];
        for (int e = adj_off_[n]; e < adj_off_[n + 1]; ++e) {
            const LinkRef& ref = adj_[e];
            if (ref.pipe >= 0 && r_[ref.pipe] < 0.0) continue;
            if (!reached_[ref.other]) {
                reached_[ref.other] = 1;
                queue_[qtail++] = ref.other;
            }
        }
    }

    // System rows: reached junctions. Unreached junctions are fatal when they
    // carry demand or any realized link (their equations would be singular).
    sys_node_.clear();
    for (int j = 0; j < nj_; ++j) {
        if (reached_[j]) {
            row_[j] = static_cast<int>(sys_node_.size());
            sys_node_.push_back(j);
            continue;
        }
        row_[j] = -1;
        if (junction_demand_[j] > 0.0)
            throw Disconnected("junction " + net_->junctions[j].id +
                               " has demand but no path to a reservoir");
        for (int e = adj_off_[j]; e < adj_off_[j + 1]; ++e) {
            const LinkRef& ref = adj_[e];
            if (ref.pipe < 0 || r_[ref.pipe] >= 0.0)
                throw Disconnected("junction " + net_->junctions[j].id +
                                   " is cut off from every reservoir");
        }
    }
    const int n = static_cast<int>(sys_node_.size());

    for (int k = 0; k < np_; ++k)
        flow_[k] = r_[k] < 0.0 ? 0.0 : q0_flat_[r_off_[k] + indices[k]];
    std::fill(pump_q_.begin(), pump_q_.end(), kInitPumpFlow);
    for (int i = 0; i < n; ++i) prev_[i] = max_res_head_;

    const bool dense = n <= kDenseLimit;
    std::vector<Eigen::Triplet<double>> trips;

    RawResult result;
    double inv_rho_g = 1.0 / (kWaterDensity * kGravity);

    for (int it = 1; it <= kMaxIterations; ++it) {
        if (dense) {
            a_.topLeftCorner(n, n).setZero();
        } else {
            trips.clear();
        }
        for (int i = 0; i < n; ++i) b_[i] = -junction_demand_[sys_node_[i]];

        auto add = [&](int i, int j, double v) {
            if (dense)
                a_(i, j) += v;
            else
                trips.emplace_back(i, j, v);
        };

        auto couple = [&](int from, int to, double p, double y, int slot) {
            y_link_[slot] = y;
            p_link_[slot] = p;
            int ri = from < nj_ ? row_[from] : -1;
            int rj = to < nj_ ? row_[to] : -1;
            if (ri >= 0) {
                add(ri, ri, p);
                b_[ri] -= y;
                if (rj < 0) b_[ri] += p * res_head_[to - nj_];
            }
            if (rj >= 0) {
                add(rj, rj, p);
                b_[rj] += y;
                if (ri < 0) b_[rj] += p * res_head_[from - nj_];
            }
            if (ri >= 0 && rj >= 0) {
                add(ri, rj, -p);
                add(rj, ri, -p);
            }
        };

        for (int k = 0; k < np_; ++k) {
            if (r_[k] < 0.0) continue;
            double q = flow_[k];
            double aq = std::fabs(q);
            double g, h;
            if (aq < kLowFlowThreshold) {
                g = r_[k] * std::pow(kLowFlowThreshold, kHwFlowExp - 1.0);
                h = g * q;
            } else {
                double t = std::pow(aq, kHwFlowExp - 1.0);
                g = kHwFlowExp * r_[k] * t;
                h = r_[k] * q * t;
            }
            double p = 1.0 / g;
            couple(pipe_from_[k], pipe_to_[k], p, q - p * h, k);
        }
        for (int k = 0; k < npu_; ++k) {
            double qe = std::max(pump_q_[k], kLowFlowThreshold);
            double h = -pump_power_[k] * inv_rho_g / qe;     // head gain as negative loss
            double g = pump_power_[k] * inv_rho_g / (qe * qe);
            double p = 1.0 / g;
            couple(pump_from_[k], pump_to_[k], p, qe - p * h, np_ + k);
        }

        if (n > 0) {
            if (dense) {
                ldlt_.compute(a_.topLeftCorner(n, n));
                x_.head(n) = ldlt_.solve(b_.head(n));
            } else {
                Eigen::SparseMatrix<double> a(n, n);
                a.setFromTriplets(trips.begin(), trips.end());
                Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
                x_.head(n) = solver.solve(b_.head(n));
            }
            if (!x_.head(n).allFinite()) {
                result.iterations = it;
                result.converged = false;
                break;
            }
        }

        for (int k = 0; k < np_; ++k) {
            if (r_[k] < 0.0) continue;
            flow_[k] = y_link_[k] +
                       p_link_[k] * (node_head(pipe_from_[k], x_) - node_head(pipe_to_[k], x_));
        }
        for (int k = 0; k < npu_; ++k)
            pump_q_[k] = y_link_[np_ + k] + p_link_[np_ + k] * (node_head(pump_from_[k], x_) -
                                                                node_head(pump_to_[k], x_));

        double dh = 0.0;
        for (int i = 0; i < n; ++i) dh = std::max(dh, std::fabs(x_[i] - prev_[i]));
        prev_.head(n) = x_.head(n);

        // Nodal imbalance with the updated flows.
        for (int i = 0; i < n; ++i) b_[i] = -junction_demand_[sys_node_[i]];
        for (int k = 0; k < np_; ++k) {
            if (r_[k] < 0.0) continue;
            if (int rf = pipe_from_[k] < nj_ ? row_[pipe_from_[k]] : -1; rf >= 0)
                b_[rf] -= flow_[k];
            if (int rt = pipe_to_[k] < nj_ ? row_[pipe_to_[k]] : -1; rt >= 0) b_[rt] += flow_[k];
        }
        for (int k = 0; k < npu_; ++k) {
            if (int rf = pump_from_[k] < nj_ ? row_[pump_from_[k]] : -1; rf >= 0)
                b_[rf] -= pump_q_[k];
            if (int rt = pump_to_[k] < nj_ ? row_[pump_to_[k]] : -1; rt >= 0) b_[rt] += pump_q_[k];
        }
        double residual = 0.0;
        for (int i = 0; i < n; ++i) residual = std::max(residual, std::fabs(b_[i]));

        result.iterations = it;
        result.max_mass_residual = residual;
        if (dh <= kHeadTolerance && residual <= kMassTolerance) {
            result.converged = true;
            break;
        }
    }

    for (int j = 0; j < nj_; ++j)
        junction_heads[j] = row_[j] >= 0 ? x_[row_[j]] : junction_elev_[j];
    for (int k = 0; k < np_; ++k) pipe_flows[k] = flow_[k];
    for (int k = 0; k < npu_; ++k) pump_flows[k] = pump_q_[k];
    return result;
}

HydraulicState HydraulicSolver::solve(const std::vector<int>& indices) {
    assert(static_cast<int>(indices.size()) == np_);
    std::vector<double> heads(nj_), flows(np_), pumps(npu_);
    RawResult raw = solve_raw(indices.data(), heads.data(), flows.data(), pumps.data());

    HydraulicState state;
    state.converged = raw.converged;
    state.iterations = raw.iterations;
    state.max_mass_residual = raw.max_mass_residual;
    for (int j = 0; j < nj_; ++j) state.node_heads[net_->junctions[j].id] = heads[j];
    for (int r = 0; r < nr_; ++r) state.node_heads[net_->reservoirs[r].id] = res_head_[r];
    for (int k = 0; k < np_; ++k) state.pipe_flows[net_->pipes[k].id] = flows[k];
    for (int k = 0; k < npu_; ++k) state.pump_flows[net_->pumps[k].id] = pumps[k];
    return state;
}

HydraulicState solve_steady_state(const PipeNetwork& net, const std::vector<int>& indices) {
    HydraulicSolver solver(net);
    return solver.solve(indices);
}

}  // namespace aquafront
