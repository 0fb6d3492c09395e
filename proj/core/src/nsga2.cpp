#include "aquafront/nsga2.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace aquafront {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool dominates(const Individual& a, const Individual& b) {
    const Evaluation& ea = a.eval;
    const Evaluation& eb = b.eval;
    if (ea.feasible != eb.feasible) return ea.feasible;
    if (!ea.feasible) return ea.total_head_deficit < eb.total_head_deficit;
    bool no_worse = ea.cost <= eb.cost && ea.resilience >= eb.resilience;
    bool better = ea.cost < eb.cost || ea.resilience > eb.resilience;
    return no_worse && better;
}

std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop) {
    const int n = static_cast<int>(pop.size());
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> dom_count(n, 0);
    std::vector<std::vector<int>> fronts;

    std::vector<int> current;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates(pop[i], pop[j]))
                dominated[i].push_back(j);
            else if (dominates(pop[j], pop[i]))
                ++dom_count[i];
        }
        if (dom_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current)
            for (int j : dominated[i])
                if (--dom_count[j] == 0) next.push_back(j);
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

void crowding_distance(std::vector<Individual>& pop, const std::vector<int>& front) {
    const std::size_t m = front.size();
    if (m == 0) return;
    if (m <= 2) {
        for (int i : front) pop[i].crowding = kInf;
        return;
    }
    for (int i : front) pop[i].crowding = 0.0;

    std::vector<int> order(front);
    auto accumulate = [&](auto key) {
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return key(pop[a]) < key(pop[b]); });
        double lo = key(pop[order.front()]);
        double hi = key(pop[order.back()]);
        pop[order.front()].crowding = kInf;
        pop[order.back()].crowding = kInf;
        if (hi <= lo) return;  // degenerate spread contributes nothing
        for (std::size_t k = 1; k + 1 < m; ++k)
            pop[order[k]].crowding += (key(pop[order[k + 1]]) - key(pop[order[k - 1]])) / (hi - lo);
    };
    accumulate([](const Individual& ind) { return ind.eval.cost; });
    accumulate([](const Individual& ind) { return ind.eval.resilience; });
}

std::vector<std::vector<int>> rank_population(std::vector<Individual>& pop) {
    auto fronts = fast_nondominated_sort(pop);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (int i : fronts[f]) pop[i].rank = static_cast<int>(f);
        crowding_distance(pop, fronts[f]);
    }
    return fronts;
}

double sbx_spread_factor(double u, double eta_c) {
    double exp = 1.0 / (eta_c + 1.0);
    if (u <= 0.5) return std::pow(2.0 * u, exp);
    return std::pow(1.0 / (2.0 * (1.0 - u)), exp);
}

std::pair<DesignVector, DesignVector> sbx_crossover(const DesignVector& p1,
                                                    const DesignVector& p2,
                                                    const PipeNetwork& net,
                                                    const OperatorParams& params, Rng& rng) {
    assert(p1.genes.size() == p2.genes.size());
    DesignVector c1 = p1;
    DesignVector c2 = p2;
    if (rng.uniform01() > params.p_c) return {std::move(c1), std::move(c2)};

    const auto& upper = net.gene_upper_bounds();
    for (std::size_t i = 0; i < c1.genes.size(); ++i) {
        if (rng.uniform01() >= 0.5) continue;  // gene not exchanged
        double beta = sbx_spread_factor(rng.uniform01(), params.eta_c);
        double x1 = p1.genes[i], x2 = p2.genes[i];
        double a = 0.5 * ((x1 + x2) - beta * (x2 - x1));
        double b = 0.5 * ((x1 + x2) + beta * (x2 - x1));
        c1.genes[i] = std::clamp(a, 0.0, upper[i]);
        c2.genes[i] = std::clamp(b, 0.0, upper[i]);
    }
    return {std::move(c1), std::move(c2)};
}

double mutation_delta(double u, double delta1, double delta2, double eta_m) {
    double mut_pow = 1.0 / (eta_m + 1.0);
    if (u < 0.5) {
        double xy = 1.0 - delta1;
        double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
        return std::pow(val, mut_pow) - 1.0;
    }
    double xy = 1.0 - delta2;
    double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
    return 1.0 - std::pow(val, mut_pow);
}

DesignVector polynomial_mutation(const DesignVector& d, const PipeNetwork& net,
                                 const OperatorParams& params, Rng& rng) {
    DesignVector out = d;
    const auto& upper = net.gene_upper_bounds();
    double p_m = params.resolved_p_m(out.genes.size());
    for (std::size_t i = 0; i < out.genes.size(); ++i) {
        if (rng.uniform01() >= p_m) continue;
        double span = upper[i];
        if (span <= 0.0) continue;  // single-option pipe, nothing to mutate
        double x = out.genes[i];
        double u = rng.uniform01();
        double dq = mutation_delta(u, x / span, (span - x) / span, params.eta_m);
        out.genes[i] = std::clamp(x + dq * span, 0.0, span);
    }
    return out;
}

int tournament_select(const std::vector<Individual>& pop, Rng& rng) {
    int a = static_cast<int>(rng.below(pop.size()));
    int b = static_cast<int>(rng.below(pop.size()));
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return rng.coin_flip() ? a : b;
}

std::vector<DesignVector> make_children(const std::vector<Individual>& pop,
                                        const PipeNetwork& net, const OperatorParams& params,
                                        Rng& rng) {
    assert(!pop.empty());
    std::vector<DesignVector> children;
    children.reserve(pop.size());
    while (children.size() < pop.size()) {
        const Individual& pa = pop[tournament_select(pop, rng)];
        const Individual& pb = pop[tournament_select(pop, rng)];
        auto [c1, c2] = sbx_crossover(pa.design, pb.design, net, params, rng);
        children.push_back(polynomial_mutation(c1, net, params, rng));
        if (children.size() < pop.size())
            children.push_back(polynomial_mutation(c2, net, params, rng));
    }
    return children;
}

std::vector<Individual> environmental_selection(std::vector<Individual> combined, std::size_t n) {
    assert(combined.size() >= n);
    auto fronts = rank_population(combined);

    std::vector<Individual> next;
    next.reserve(n);
    for (auto& front : fronts) {
        if (next.size() + front.size() <= n) {
            for (int i : front) next.push_back(std::move(combined[i]));
            if (next.size() == n) break;
            continue;
        }
        std::stable_sort(front.begin(), front.end(), [&](int a, int b) {
            return combined[a].crowding > combined[b].crowding;
        });
        for (int i : front) {
            if (next.size() == n) break;
            next.push_back(std::move(combined[i]));
        }
        break;
    }
    return next;
}

}  // namespace aquafront
