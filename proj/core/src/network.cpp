#include "aquafront/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "aquafront/rng.hpp"

namespace aquafront {

namespace {

void check(bool ok, const std::string& what) {
    if (!ok) throw ParseError(ParseErrorKind::InvalidNetwork, 0, what);
}

}  // namespace

void PipeNetwork::validate() {
    junction_index_.clear();
    reservoir_index_.clear();
    gene_upper_.clear();

    check(!reservoirs.empty(), "network has no reservoir");

    for (std::size_t i = 0; i < junctions.size(); ++i) {
        const auto& j = junctions[i];
        check(j.demand_m3s >= 0.0, "junction " + j.id + " has negative demand");
        if (!junction_index_.emplace(j.id, static_cast<int>(i)).second)
            throw ParseError(ParseErrorKind::DuplicateId, 0, "duplicate node id " + j.id);
    }
    for (std::size_t i = 0; i < reservoirs.size(); ++i) {
        const auto& r = reservoirs[i];
        if (junction_index_.count(r.id) || !reservoir_index_.emplace(r.id, static_cast<int>(i)).second)
            throw ParseError(ParseErrorKind::DuplicateId, 0, "duplicate node id " + r.id);
    }

    for (const auto& t : option_tables) {
        check(!t.options.empty(), "option table " + t.name + " is empty");
        for (std::size_t k = 0; k < t.options.size(); ++k) {
            const auto& o = t.options[k];
            check(o.unit_cost >= 0.0, "option table " + t.name + " has negative cost");
            if (o.diameter_m == 0.0) {
                check(k == 0, "option table " + t.name + ": zero diameter must be entry 0");
                check(o.unit_cost == 0.0, "option table " + t.name + ": absent-pipe option must cost 0");
            } else {
                check(o.diameter_m > 0.0, "option table " + t.name + " has negative diameter");
            }
            if (k > 0)
                check(o.diameter_m > t.options[k - 1].diameter_m,
                      "option table " + t.name + ": diameters not strictly ascending");
        }
    }

    auto node_exists = [&](const std::string& id) {
        return junction_index_.count(id) != 0 || reservoir_index_.count(id) != 0;
    };

    std::map<std::string, int> link_ids;
    for (const auto& p : pipes) {
        if (!link_ids.emplace(p.id, 0).second)
            throw ParseError(ParseErrorKind::DuplicateId, 0, "duplicate link id " + p.id);
        if (!node_exists(p.from))
            throw ParseError(ParseErrorKind::DanglingReference, 0,
                             "pipe " + p.id + " references missing node " + p.from);
        if (!node_exists(p.to))
            throw ParseError(ParseErrorKind::DanglingReference, 0,
                             "pipe " + p.id + " references missing node " + p.to);
        check(p.length_m > 0.0, "pipe " + p.id + " has non-positive length");
        check(p.roughness > 0.0, "pipe " + p.id + " has non-positive roughness");
        check(p.option_table >= 0 && static_cast<std::size_t>(p.option_table) < option_tables.size(),
              "pipe " + p.id + " references missing option table");
    }
    for (const auto& p : pumps) {
        if (!link_ids.emplace(p.id, 0).second)
            throw ParseError(ParseErrorKind::DuplicateId, 0, "duplicate link id " + p.id);
        if (!node_exists(p.from))
            throw ParseError(ParseErrorKind::DanglingReference, 0,
                             "pump " + p.id + " references missing node " + p.from);
        if (!node_exists(p.to))
            throw ParseError(ParseErrorKind::DanglingReference, 0,
                             "pump " + p.id + " references missing node " + p.to);
        check(p.power_w > 0.0, "pump " + p.id + " has non-positive power");
    }

    // Structural connectivity over all links, absent-pipe options included.
    const std::size_t n = node_count();
    check(n > 0, "network has no nodes");
    std::map<std::string, int> node_ord;
    for (const auto& j : junctions) node_ord.emplace(j.id, static_cast<int>(node_ord.size()));
    for (const auto& r : reservoirs) node_ord.emplace(r.id, static_cast<int>(node_ord.size()));
    std::vector<std::vector<int>> adj(n);
    auto link = [&](const std::string& a, const std::string& b) {
        int ia = node_ord[a], ib = node_ord[b];
        adj[ia].push_back(ib);
        adj[ib].push_back(ia);
    };
    for (const auto& p : pipes) link(p.from, p.to);
    for (const auto& p : pumps) link(p.from, p.to);

    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                frontier.push(v);
            }
    }
    check(reached == n, "network graph is not connected");

    gene_upper_.reserve(pipes.size());
    for (const auto& p : pipes)
        gene_upper_.push_back(static_cast<double>(table_for(p).size()) - 1.0);
}

int PipeNetwork::junction_index(const std::string& id) const {
    auto it = junction_index_.find(id);
    return it == junction_index_.end() ? -1 : it->second;
}

int PipeNetwork::reservoir_index(const std::string& id) const {
    auto it = reservoir_index_.find(id);
    return it == reservoir_index_.end() ? -1 : it->second;
}

void round_to_indices(const DesignVector& d, const PipeNetwork& net, std::vector<int>& out) {
    const auto& upper = net.gene_upper_bounds();
    out.resize(d.genes.size());
    for (std::size_t i = 0; i < d.genes.size(); ++i) {
        int k = static_cast<int>(std::floor(d.genes[i] + 0.5));  // ties round half-up
        out[i] = std::max(0, std::min(k, static_cast<int>(upper[i])));
    }
}

std::vector<int> round_to_indices(const DesignVector& d, const PipeNetwork& net) {
    std::vector<int> indices;
    round_to_indices(d, net, indices);
    return indices;
}

DesignVector random_design(const PipeNetwork& net, Rng& rng) {
    const auto& upper = net.gene_upper_bounds();
    DesignVector d;
    d.genes.resize(upper.size());
    for (std::size_t i = 0; i < upper.size(); ++i) d.genes[i] = rng.uniform(0.0, upper[i]);
    return d;
}

bool design_within_bounds(const DesignVector& d, const PipeNetwork& net) {
    const auto& upper = net.gene_upper_bounds();
    if (d.genes.size() != upper.size()) return false;
    for (std::size_t i = 0; i < upper.size(); ++i)
        if (!(d.genes[i] >= 0.0 && d.genes[i] <= upper[i])) return false;
    return true;
}

}  // namespace aquafront
