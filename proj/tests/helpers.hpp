#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aquafront/inp.hpp"
#include "aquafront/network.hpp"

#ifndef AQUAFRONT_DATA_DIR
#define AQUAFRONT_DATA_DIR "."
#endif

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(AQUAFRONT_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test fixture missing: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

// The 4-option table shipped as data/options4.csv.
inline aquafront::OptionTable table4() {
    return {"default", {{0.2032, 30.0}, {0.254, 45.0}, {0.3048, 60.0}, {0.4064, 90.0}}};
}

// The 6-option table shipped as data/options6.csv.
inline aquafront::OptionTable table6() {
    return {"default",
            {{0.1524, 20.0}, {0.2032, 32.0}, {0.254, 45.0}, {0.3048, 60.0}, {0.3556, 78.0}, {0.4064, 98.0}}};
}

// R1(100 m) -> J1, demand 0.1, L 1000, C 130, pressure head floor 30 m.
inline aquafront::PipeNetwork make_onepipe() {
    aquafront::PipeNetwork net;
    net.junctions = {{"J1", 50.0, 0.1, 30.0}};
    net.reservoirs = {{"R1", 100.0}};
    net.pipes = {{"P1", "R1", "J1", 1000.0, 130.0, 0}};
    net.option_tables = {table4()};
    net.validate();
    return net;
}

// Two identical parallel mains R1 -> J1, total demand 0.2.
inline aquafront::PipeNetwork make_twopipe() {
    aquafront::PipeNetwork net;
    net.junctions = {{"J1", 50.0, 0.2, 30.0}};
    net.reservoirs = {{"R1", 100.0}};
    net.pipes = {{"P1", "R1", "J1", 1000.0, 130.0, 0}, {"P2", "R1", "J1", 1000.0, 130.0, 0}};
    net.option_tables = {table4()};
    net.validate();
    return net;
}

// Chain R1(100 m) -> J1 -> J2 -> J3, demand 0.03 each, 64 designs.
inline aquafront::PipeNetwork make_tiny3() {
    aquafront::PipeNetwork net;
    net.junctions = {{"J1", 50.0, 0.03, 30.0}, {"J2", 50.0, 0.03, 30.0}, {"J3", 50.0, 0.03, 30.0}};
    net.reservoirs = {{"R1", 100.0}};
    net.pipes = {{"P1", "R1", "J1", 1000.0, 130.0, 0},
                 {"P2", "J1", "J2", 800.0, 130.0, 0},
                 {"P3", "J2", "J3", 1200.0, 130.0, 0}};
    net.option_tables = {table4()};
    net.validate();
    return net;
}

// Looped 5-junction, 8-pipe grid fed from R1(80 m).
inline aquafront::PipeNetwork make_synth8() {
    aquafront::PipeNetwork net;
    net.junctions = {{"J1", 30.0, 0.02, 20.0},
                     {"J2", 32.0, 0.02, 20.0},
                     {"J3", 32.0, 0.02, 20.0},
                     {"J4", 34.0, 0.02, 20.0},
                     {"J5", 34.0, 0.03, 20.0}};
    net.reservoirs = {{"R1", 80.0}};
    net.pipes = {{"P1", "R1", "J1", 500.0, 130.0, 0},
                 {"P2", "J1", "J2", 400.0, 130.0, 0},
                 {"P3", "J1", "J3", 400.0, 130.0, 0},
                 {"P4", "J2", "J4", 350.0, 130.0, 0},
                 {"P5", "J3", "J5", 350.0, 130.0, 0},
                 {"P6", "J2", "J3", 250.0, 130.0, 0},
                 {"P7", "J4", "J5", 300.0, 130.0, 0},
                 {"P8", "J3", "J4", 250.0, 130.0, 0}};
    net.option_tables = {table6()};
    net.validate();
    return net;
}

// R1(10 m) -> 5 kW pump -> J1 -> P1 -> J2, demand 0.05 at J2.
inline aquafront::PipeNetwork make_pumped() {
    aquafront::PipeNetwork net;
    net.junctions = {{"J1", 2.0, 0.0, 15.0}, {"J2", 2.0, 0.05, 15.0}};
    net.reservoirs = {{"R1", 10.0}};
    net.pipes = {{"P1", "J1", "J2", 500.0, 130.0, 0}};
    net.pumps = {{"PM1", "R1", "J1", 5000.0}};
    net.option_tables = {{"fixed", {{0.3048, 0.0}}}};
    net.validate();
    return net;
}

// Loads a shipped instance through the real INP/CSV parsers (the JSON sidecar
// path is exercised by the command-line tests).
inline aquafront::PipeNetwork load_instance(const std::string& stem, const std::string& flow_units,
                                            double min_head_m, const std::string& table_file) {
    aquafront::NetworkConfig config;
    config.units = aquafront::UnitSystem::named("m", flow_units, "mm");
    config.default_min_head_m = min_head_m;
    if (!table_file.empty())
        config.tables.push_back(aquafront::parse_cost_table(read_file(data_path(table_file)), "default"));
    return aquafront::parse_inp(read_file(data_path(stem + ".inp")), config);
}

namespace oracle {

// Closed-form values for the shipped fixtures (40-digit arithmetic, frozen).
inline constexpr double kHeadloss_q01_L1000_C130_D03 = 6.426308566801251761397292581390558964747;

// onepipe J1 head by option index.
inline constexpr double kOnepipeHead[4] = {
    57.13302414577220322911554450577894089109,
    85.54313342151697528196094156024548189895,
    94.05184436443849667821044551818940657048,
    98.53510756088325997842456876409871445605,
};
inline constexpr double kOnepipeResilienceOpt2 = 0.7025922182219248339105222759094703285238;
inline constexpr double kOnepipeResilienceOpt3 = 0.9267553780441629989212284382049357228025;
inline constexpr double kOnepipeDeficitOpt0 = 22.86697585422779677088445549422105910891;
inline constexpr double kOnepipeRawResilienceOpt0 = -1.143348792711389838544222774711052955446;

// twopipe, both pipes at option 2 (symmetric split).
inline constexpr double kTwopipeEqualHead = 94.05184436443849667821044551818940657048;
// twopipe, options (2, 3).
inline constexpr double kTwopipeMixedQ1 = 0.0638751913579306135025973402981980763943;
inline constexpr double kTwopipeMixedQ2 = 0.1361248086420693864974026597018019236057;
inline constexpr double kTwopipeMixedHead = 97.40667119350646686519499446988876167916;
inline constexpr double kTwopipeMixedResilience = 0.7615418647159079253522810080576333234633;

inline constexpr double kPumpedHeadJ1 = 20.19367991845056065239551478083588175331;
inline constexpr double kPumpedHeadJ2 = 19.3698363116584102093996457528073494779;
inline constexpr double kPumpedResilience = 0.7420393941068944830581080381436354413722;

struct Tiny3FrontPoint {
    int design[3];
    double cost;
    double resilience;
};

// Exhaustive true Pareto front of tiny3 (11 of 64 designs).
inline constexpr Tiny3FrontPoint kTiny3Front[11] = {
    {{1, 2, 0}, 129000.0, 0.2228555501959053985962130453578199797371},
    {{2, 1, 0}, 132000.0, 0.4747440351057748358836685698781458572688},
    {{2, 2, 0}, 144000.0, 0.564686709129115535553542242433040099515},
    {{2, 2, 1}, 162000.0, 0.6442142333219764262871765817719573283321},
    {{3, 2, 0}, 174000.0, 0.6997106958453317302630547519054494134014},
    {{3, 1, 1}, 180000.0, 0.7002224888864428868442479449500725779621},
    {{3, 2, 1}, 192000.0, 0.7843611552857178339627010455949568442012},
    {{3, 2, 2}, 210000.0, 0.8262019179470469150143183144549565645916},
    {{3, 3, 1}, 216000.0, 0.8361623049944027720932903677915394211655},
    {{3, 3, 2}, 234000.0, 0.873569232298200021386564792951059040815},
    {{3, 3, 3}, 270000.0, 0.9214209848514509674404326609971375752198},
};

}  // namespace oracle

}  // namespace testutil
