#include <cmath>
#include <vector>

#include "doctest.h"

#include "aquafront/errors.hpp"
#include "aquafront/hydraulics.hpp"
#include "helpers.hpp"

using namespace aquafront;
using namespace testutil;

TEST_CASE("headloss_hw matches the closed form") {
    CHECK(std::fabs(headloss_hw(0.1, 1000.0, 130.0, 0.3) - oracle::kHeadloss_q01_L1000_C130_D03) <
          1e-12);
    CHECK(headloss_hw(0.0, 1000.0, 130.0, 0.3) == 0.0);
    // odd in the flow argument
    for (double q : {0.001, 0.05, 0.3, 2.0})
        CHECK(headloss_hw(-q, 800.0, 110.0, 0.25) == doctest::Approx(-headloss_hw(q, 800.0, 110.0, 0.25)));
    // monotone in flow, decreasing in diameter
    CHECK(headloss_hw(0.2, 1000.0, 130.0, 0.3) > headloss_hw(0.1, 1000.0, 130.0, 0.3));
    CHECK(headloss_hw(0.1, 1000.0, 130.0, 0.4) < headloss_hw(0.1, 1000.0, 130.0, 0.3));
}

TEST_CASE("one-pipe heads match the analytic solution per option") {
    PipeNetwork net = make_onepipe();
    HydraulicSolver solver(net);
    for (int k = 0; k < 4; ++k) {
        HydraulicState state = solver.solve({k});
        REQUIRE(state.converged);
        CHECK(std::fabs(state.node_heads.at("J1") - oracle::kOnepipeHead[k]) <= 1e-6);
        CHECK(std::fabs(state.pipe_flows.at("P1") - 0.1) <= 1e-9);
        CHECK(state.max_mass_residual <= 1e-6);
        CHECK(state.node_heads.at("R1") == 100.0);
    }
}

TEST_CASE("parallel mains split flow analytically") {
    PipeNetwork net = make_twopipe();
    HydraulicSolver solver(net);

    HydraulicState equal = solver.solve({2, 2});
    REQUIRE(equal.converged);
    CHECK(std::fabs(equal.node_heads.at("J1") - oracle::kTwopipeEqualHead) <= 1e-6);
    CHECK(std::fabs(equal.pipe_flows.at("P1") - 0.1) <= 1e-7);
    CHECK(std::fabs(equal.pipe_flows.at("P2") - 0.1) <= 1e-7);

    HydraulicState mixed = solver.solve({2, 3});
    REQUIRE(mixed.converged);
    CHECK(std::fabs(mixed.node_heads.at("J1") - oracle::kTwopipeMixedHead) <= 1e-6);
    CHECK(std::fabs(mixed.pipe_flows.at("P1") - oracle::kTwopipeMixedQ1) <= 1e-7);
    CHECK(std::fabs(mixed.pipe_flows.at("P2") - oracle::kTwopipeMixedQ2) <= 1e-7);
}

TEST_CASE("constant-power pump adds P/(rho g Q) of head") {
    PipeNetwork net = make_pumped();
    HydraulicSolver solver(net);
    HydraulicState state = solver.solve({0});
    REQUIRE(state.converged);
    CHECK(std::fabs(state.node_heads.at("J1") - oracle::kPumpedHeadJ1) <= 1e-6);
    CHECK(std::fabs(state.node_heads.at("J2") - oracle::kPumpedHeadJ2) <= 1e-6);
    CHECK(std::fabs(state.pump_flows.at("PM1") - 0.05) <= 1e-9);
}

TEST_CASE("mass residual within tolerance on every bundled network") {
    auto probe = [](const PipeNetwork& net) {
        HydraulicSolver solver(net);
        const std::size_t n = net.decision_count();
        std::vector<std::vector<int>> designs;
        designs.emplace_back(n, 0);
        std::vector<int> top(n);
        std::vector<int> alt(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int hi = static_cast<int>(net.table_for(net.pipes[i]).options.size()) - 1;
            top[i] = hi;
            alt[i] = static_cast<int>(i) % 2 == 0 ? hi : hi / 2;
        }
        designs.push_back(top);
        designs.push_back(alt);
        for (const auto& d : designs) {
            HydraulicState state = solver.solve(d);
            CHECK(state.converged);
            CHECK(state.max_mass_residual <= 1e-6);
        }
    };
    probe(make_onepipe());
    probe(make_twopipe());
    probe(make_tiny3());
    probe(make_synth8());
    probe(make_pumped());
}

TEST_CASE("upgrading a chain pipe never lowers a head") {
    PipeNetwork net = make_tiny3();
    HydraulicSolver solver(net);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 3; ++c) {
                HydraulicState before = solver.solve({a, b, c});
                HydraulicState after = solver.solve({a, b, c + 1});
                for (const auto& [id, head] : before.node_heads)
                    CHECK(after.node_heads.at(id) >= head - 1e-9);
            }
}

TEST_CASE("near-zero demand stays on the linearized branch") {
    PipeNetwork net = make_onepipe();
    net.junctions[0].demand_m3s = 1e-10;
    net.validate();
    HydraulicSolver solver(net);
    HydraulicState state = solver.solve({2});
    REQUIRE(state.converged);
    CHECK(std::isfinite(state.node_heads.at("J1")));
    CHECK(std::fabs(state.node_heads.at("J1") - 100.0) < 1e-3);

    net.junctions[0].demand_m3s = 0.0;
    net.validate();
    HydraulicSolver zero(net);
    HydraulicState rest = zero.solve({2});
    REQUIRE(rest.converged);
    CHECK(std::fabs(rest.node_heads.at("J1") - 100.0) <= 1e-6);
    CHECK(std::fabs(rest.pipe_flows.at("P1")) <= 1e-8);
}

namespace {

// R1 -> J1 -> J2 with the second pipe removable (entry 0 absent).
PipeNetwork make_severable(double j2_demand) {
    PipeNetwork net;
    net.junctions = {{"J1", 50.0, 0.05, 20.0}, {"J2", 45.0, j2_demand, 20.0}};
    net.reservoirs = {{"R1", 100.0}};
    net.pipes = {{"P1", "R1", "J1", 500.0, 130.0, 0}, {"P2", "J1", "J2", 500.0, 130.0, 1}};
    net.option_tables = {{"fixed", {{0.3048, 0.0}}},
                         {"severable", {{0.0, 0.0}, {0.3048, 40.0}}}};
    net.validate();
    return net;
}

}  // namespace

TEST_CASE("absent pipes sever the graph") {
    SUBCASE("cut-off junction with demand") {
        PipeNetwork net = make_severable(0.02);
        HydraulicSolver solver(net);
        CHECK_THROWS_AS(solver.solve({0, 0}), Disconnected);
        HydraulicState ok = solver.solve({0, 1});
        CHECK(ok.converged);
    }
    SUBCASE("cut-off junction without demand is excluded at its elevation") {
        PipeNetwork net = make_severable(0.0);
        HydraulicSolver solver(net);
        HydraulicState state = solver.solve({0, 0});
        REQUIRE(state.converged);
        CHECK(state.node_heads.at("J2") == 45.0);
        CHECK(state.pipe_flows.at("P2") == 0.0);
        CHECK(std::fabs(state.pipe_flows.at("P1") - 0.05) <= 1e-9);
    }
    SUBCASE("zero-demand island with an internal live link is still fatal") {
        PipeNetwork net;
        net.junctions = {{"J1", 50.0, 0.05, 20.0}, {"J2", 45.0, 0.0, 20.0}, {"J3", 45.0, 0.0, 20.0}};
        net.reservoirs = {{"R1", 100.0}};
        net.pipes = {{"P1", "R1", "J1", 500.0, 130.0, 0},
                     {"P2", "J1", "J2", 500.0, 130.0, 1},
                     {"P3", "J2", "J3", 500.0, 130.0, 0}};
        net.option_tables = {{"fixed", {{0.3048, 0.0}}}, {"severable", {{0.0, 0.0}, {0.3048, 40.0}}}};
        net.validate();
        HydraulicSolver solver(net);
        CHECK_THROWS_AS(solver.solve({0, 0, 0}), Disconnected);
    }
}

TEST_CASE("solver requires a validated network") {
    PipeNetwork net;
    net.junctions = {{"J1", 50.0, 0.1, 30.0}};
    net.reservoirs = {{"R1", 100.0}};
    net.pipes = {{"P1", "R1", "J1", 1000.0, 130.0, 0}};
    net.option_tables = {table4()};
    CHECK_THROWS_AS(HydraulicSolver{net}, ConfigInvalid);  // validate() not called
}
