#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aquafront/errors.hpp"

namespace aquafront {

// One admissible pipe configuration: internal diameter and cost per metre.
// Diameter 0 means "pipe absent" and is only valid as entry 0 with zero cost.
struct PipeOption {
    double diameter_m = 0.0;
    double unit_cost = 0.0;
};

struct OptionTable {
    std::string name;
    std::vector<PipeOption> options;

    std::size_t size() const { return options.size(); }
};

struct Junction {
    std::string id;
    double elevation_m = 0.0;
    double demand_m3s = 0.0;
    double min_head_m = 0.0;  // required pressure head above elevation

    double required_head_m() const { return elevation_m + min_head_m; }
};

struct Reservoir {
    std::string id;
    double head_m = 0.0;  // fixed total head
};

struct Pipe {
    std::string id;
    std::string from;
    std::string to;
    double length_m = 0.0;
    double roughness = 0.0;  // Hazen-Williams C
    int option_table = -1;   // index into PipeNetwork::option_tables
};

// Constant-power pump from -> to.
struct Pump {
    std::string id;
    std::string from;
    std::string to;
    double power_w = 0.0;
};

// Immutable hydraulic graph. Build through inp.hpp or the aggregate-init +
// validate() path; evaluators share const references across threads.
class PipeNetwork {
  public:
    std::vector<Junction> junctions;
    std::vector<Reservoir> reservoirs;
    std::vector<Pipe> pipes;
    std::vector<Pump> pumps;
    std::vector<OptionTable> option_tables;

    // Checks all structural invariants; throws ParseError(InvalidNetwork or
    // DanglingReference) on violation and fills the lookup caches.
    void validate();

    std::size_t node_count() const { return junctions.size() + reservoirs.size(); }
    std::size_t decision_count() const { return pipes.size(); }

    const OptionTable& table_for(const Pipe& p) const { return option_tables[static_cast<std::size_t>(p.option_table)]; }

    // Per-gene upper bounds, K-1 for each pipe's option table (lower bounds are 0).
    const std::vector<double>& gene_upper_bounds() const { return gene_upper_; }

    // -1 when the id is not a node / not a link.
    int junction_index(const std::string& id) const;
    int reservoir_index(const std::string& id) const;

  private:
    std::map<std::string, int> junction_index_;
    std::map<std::string, int> reservoir_index_;
    std::vector<double> gene_upper_;
};

// Real-valued genome, one gene per pipe, gene i in [0, K_i - 1].
struct DesignVector {
    std::vector<double> genes;

    bool operator==(const DesignVector&) const = default;
};

// Nearest-integer realization of a design; ties at .5 round up, results are
// clamped into [0, K-1].
std::vector<int> round_to_indices(const DesignVector& d, const PipeNetwork& net);

// Same rounding into a caller-owned buffer; reuses its capacity.
void round_to_indices(const DesignVector& d, const PipeNetwork& net, std::vector<int>& out);

// Uniform random design within bounds.
class Rng;
DesignVector random_design(const PipeNetwork& net, Rng& rng);

bool design_within_bounds(const DesignVector& d, const PipeNetwork& net);

}  // namespace aquafront
