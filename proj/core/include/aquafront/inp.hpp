#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "aquafront/network.hpp"

namespace aquafront {

// Multiplicative conversions from the document's units to SI (m, m3/s).
// The benchmark instances come in mixed native units; the sidecar network
// config declares which, and everything downstream of parsing is SI.
struct UnitSystem {
    double length_to_m = 1.0;    // lengths and elevations/heads
    double flow_to_m3s = 1.0;    // junction demands
    double diameter_to_m = 1.0;  // the [PIPES] diameter column

    static UnitSystem si() { return {1.0, 1.0, 1.0}; }

    // Named units: length "m"|"ft", flow "m3/s"|"L/s"|"m3/h"|"cfs"|"gpm",
    // diameter "m"|"mm"|"in". Throws ConfigInvalid on unknown names.
    static UnitSystem named(const std::string& length, const std::string& flow,
                            const std::string& diameter);
};

// Everything the INP text itself cannot carry: units, minimum-head
// requirements, and the option tables pipes are sized from.
struct NetworkConfig {
    UnitSystem units = UnitSystem::si();
    double default_min_head_m = 0.0;
    std::map<std::string, double> min_head_overrides;  // junction id -> min head (m)

    // Tables pipes may reference. When empty, each pipe gets a one-entry
    // table built from its own [PIPES] diameter column at zero cost, which
    // keeps plain EPANET-style documents loadable as fixed designs.
    std::vector<OptionTable> tables;

    // pipe id -> table name. Pipes not listed use the table named "default"
    // when one exists, otherwise their own inline single-diameter table.
    std::map<std::string, std::string> pipe_tables;
};

// Parses the supported INP subset ([TITLE], [JUNCTIONS], [RESERVOIRS],
// [PIPES], [PUMPS], [COORDINATES], [END]) into a validated PipeNetwork.
// Unsupported sections (tanks, valves, patterns, ...) raise UnknownSection.
PipeNetwork parse_inp(std::string_view text, const NetworkConfig& config = {});

// SI-unit round-trip emission of the retained field set.
std::string serialize_inp(const PipeNetwork& net);

// CSV rows `index,diameter_mm,unit_cost` with contiguous indices from 0 and
// strictly ascending diameters; diameters land in metres.
OptionTable parse_cost_table(std::string_view csv, const std::string& name = "default");

}  // namespace aquafront
