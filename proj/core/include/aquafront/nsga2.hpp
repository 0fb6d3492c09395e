#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "aquafront/network.hpp"
#include "aquafront/objectives.hpp"
#include "aquafront/rng.hpp"

namespace aquafront {

struct Individual {
    DesignVector design;
    Evaluation eval;
    int rank = -1;          // front index, 0 best; valid after ranking
    double crowding = 0.0;  // infinity at front extremes
};

struct OperatorParams {
    double p_c = 0.9;
    double eta_c = 15.0;
    double p_m = -1.0;  // negative: resolve to 1/N_real at run start
    double eta_m = 7.0;

    double resolved_p_m(std::size_t n_real) const {
        return p_m < 0.0 ? 1.0 / static_cast<double>(n_real) : p_m;
    }
};

// Constrained dominance: feasible beats infeasible; two infeasibles compare by
// total head deficit; two feasibles by Pareto order on (cost down, resilience up).
bool dominates(const Individual& a, const Individual& b);

// Fronts as index lists into pop; front 0 first. Does not touch rank fields.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop);

// Assigns crowding distances to the members of one front.
void crowding_distance(std::vector<Individual>& pop, const std::vector<int>& front);

// Runs the sort, stamps rank and crowding on every member, returns the fronts.
std::vector<std::vector<int>> rank_population(std::vector<Individual>& pop);

// SBX with per-pair rate p_c and per-gene exchange probability 0.5; children
// clipped to [0, K-1] per gene.
std::pair<DesignVector, DesignVector> sbx_crossover(const DesignVector& p1,
                                                    const DesignVector& p2,
                                                    const PipeNetwork& net,
                                                    const OperatorParams& params, Rng& rng);

// Spread factor for one gene from the inverse CDF of the SBX density.
double sbx_spread_factor(double u, double eta_c);

// Bounded polynomial mutation, per-gene rate resolved_p_m.
DesignVector polynomial_mutation(const DesignVector& d, const PipeNetwork& net,
                                 const OperatorParams& params, Rng& rng);

// Perturbation fraction of the gene range for one mutated gene; zero at u=0.5.
double mutation_delta(double u, double delta1, double delta2, double eta_m);

// Binary tournament on (rank, crowding, coin flip); returns the winner's
// index. pop must be ranked and crowded.
int tournament_select(const std::vector<Individual>& pop, Rng& rng);

// N unevaluated children via binary tournament (rank, crowding, coin flip),
// SBX, and mutation. pop must be ranked and crowded.
std::vector<DesignVector> make_children(const std::vector<Individual>& pop,
                                        const PipeNetwork& net, const OperatorParams& params,
                                        Rng& rng);

// NSGA-II truncation of a combined parent+child population to size n. Output
// carries fresh rank and crowding values.
std::vector<Individual> environmental_selection(std::vector<Individual> combined, std::size_t n);

}  // namespace aquafront
