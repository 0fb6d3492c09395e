#include <string>

#include "doctest.h"

#include "aquafront/errors.hpp"
#include "aquafront/inp.hpp"
#include "helpers.hpp"

using namespace aquafront;

namespace {

NetworkConfig config4(const std::string& flow = "m3/s") {
    NetworkConfig config;
    config.units = UnitSystem::named("m", flow, "mm");
    config.default_min_head_m = 30.0;
    config.tables = {testutil::table4()};
    return config;
}

ParseErrorKind kind_of(const std::string& text, const NetworkConfig& config = {}) {
    try {
        parse_inp(text, config);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected ParseError");
    return ParseErrorKind::MalformedRecord;
}

}  // namespace

TEST_CASE("parses the shipped instances with unit conversion") {
    PipeNetwork one = parse_inp(testutil::read_file(testutil::data_path("onepipe.inp")), config4());
    CHECK(one.junctions.size() == 1);
    CHECK(one.reservoirs.size() == 1);
    CHECK(one.pipes.size() == 1);
    CHECK(one.junctions[0].demand_m3s == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(one.junctions[0].min_head_m == 30.0);
    CHECK(one.pipes[0].length_m == 1000.0);
    CHECK(one.table_for(one.pipes[0]).options.size() == 4);

    PipeNetwork tiny = parse_inp(testutil::read_file(testutil::data_path("tiny3.inp")), config4("L/s"));
    REQUIRE(tiny.junctions.size() == 3);
    for (const Junction& j : tiny.junctions) CHECK(j.demand_m3s == doctest::Approx(0.03).epsilon(1e-12));

    PipeNetwork pumped =
        parse_inp(testutil::read_file(testutil::data_path("pumped.inp")),
                  [] {
                      NetworkConfig c;
                      c.units = UnitSystem::named("m", "m3/s", "mm");
                      c.default_min_head_m = 15.0;
                      return c;
                  }());
    REQUIRE(pumped.pumps.size() == 1);
    CHECK(pumped.pumps[0].power_w == doctest::Approx(5000.0));  // kW column
    // without tables the pipe gets its own single-diameter fallback
    CHECK(pumped.table_for(pumped.pipes[0]).options.size() == 1);
    CHECK(pumped.table_for(pumped.pipes[0]).options[0].diameter_m == doctest::Approx(0.3048));
}

TEST_CASE("named units convert") {
    UnitSystem u = UnitSystem::named("ft", "gpm", "in");
    CHECK(u.length_to_m == doctest::Approx(0.3048));
    CHECK(u.flow_to_m3s == doctest::Approx(3.785411784e-3 / 60.0).epsilon(1e-12));
    CHECK(u.diameter_to_m == doctest::Approx(0.0254));
    CHECK_THROWS_AS(UnitSystem::named("furlong", "m3/s", "mm"), ConfigInvalid);
    CHECK_THROWS_AS(UnitSystem::named("m", "slugs", "mm"), ConfigInvalid);
    CHECK_THROWS_AS(UnitSystem::named("m", "m3/s", "cubit"), ConfigInvalid);
}

TEST_CASE("serialize round trip preserves the retained fields") {
    PipeNetwork net = parse_inp(testutil::read_file(testutil::data_path("synth8.inp")),
                                [] {
                                    NetworkConfig c;
                                    c.units = UnitSystem::named("m", "m3/s", "mm");
                                    c.default_min_head_m = 20.0;
                                    c.tables = {testutil::table6()};
                                    return c;
                                }());
    const std::string text = serialize_inp(net);
    NetworkConfig si;  // serialized form is SI with diameters in metres
    si.default_min_head_m = 20.0;
    si.tables = {testutil::table6()};
    PipeNetwork again = parse_inp(text, si);
    REQUIRE(again.junctions.size() == net.junctions.size());
    REQUIRE(again.pipes.size() == net.pipes.size());
    REQUIRE(again.pumps.size() == net.pumps.size());
    for (std::size_t i = 0; i < net.junctions.size(); ++i) {
        CHECK(again.junctions[i].id == net.junctions[i].id);
        CHECK(again.junctions[i].elevation_m == net.junctions[i].elevation_m);
        CHECK(again.junctions[i].demand_m3s == net.junctions[i].demand_m3s);
    }
    for (std::size_t i = 0; i < net.pipes.size(); ++i) {
        CHECK(again.pipes[i].id == net.pipes[i].id);
        CHECK(again.pipes[i].from == net.pipes[i].from);
        CHECK(again.pipes[i].to == net.pipes[i].to);
        CHECK(again.pipes[i].length_m == net.pipes[i].length_m);
        CHECK(again.pipes[i].roughness == net.pipes[i].roughness);
    }
}

TEST_CASE("parser diagnostics carry kind and line") {
    CHECK(kind_of("[VALVES]\nV1 J1 J2\n") == ParseErrorKind::UnknownSection);
    CHECK(kind_of("J1 50 0.1\n") == ParseErrorKind::MalformedRecord);  // record before a section
    CHECK(kind_of("[JUNCTIONS]\nJ1\n") == ParseErrorKind::MalformedRecord);
    CHECK(kind_of("[JUNCTIONS]\nJ1 fifty\n") == ParseErrorKind::MalformedRecord);
    CHECK(kind_of("[RESERVOIRS]\nR1 100 3\n") == ParseErrorKind::MalformedRecord);
    CHECK(kind_of("[COORDINATES]\nGHOST 0 0\n") == ParseErrorKind::DanglingReference);

    const std::string base = "[JUNCTIONS]\nJ1 50 0.1\n[RESERVOIRS]\nR1 100\n";
    CHECK(kind_of(base + "[PIPES]\nP1 R1 J1 1000 304.8 130 2.5\n") == ParseErrorKind::MalformedRecord);
    CHECK(kind_of(base + "[PIPES]\nP1 R1 J1 1000 304.8 130 0 Closed\n") ==
          ParseErrorKind::MalformedRecord);
    CHECK(kind_of(base + "[PIPES]\nP1 R1 J1 1000 304.8 130\n[PUMPS]\nPM1 R1 J1 HEAD C1\n") ==
          ParseErrorKind::MalformedRecord);
    // open status and zero minor loss are accepted
    CHECK_NOTHROW(parse_inp(base + "[PIPES]\nP1 R1 J1 1000 304.8 130 0 Open\n", {}));

    try {
        parse_inp("[JUNCTIONS]\nJ1 50\nJ2\n", {});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    // structural problems surface through validate with the same exception type
    CHECK(kind_of(base + "[PIPES]\nP1 R1 GHOST 1000 304.8 130\n") == ParseErrorKind::DanglingReference);
    CHECK(kind_of("[JUNCTIONS]\nJ1 50 0.1\nJ1 60\n[RESERVOIRS]\nR1 100\n[PIPES]\nP1 R1 J1 1000 304.8 130\n") ==
          ParseErrorKind::DuplicateId);
}

TEST_CASE("comments and blank lines are ignored") {
    const std::string text =
        "; leading comment\n"
        "[JUNCTIONS]\n"
        "J1 50 0.1 ; trailing comment\n"
        "\n"
        "[RESERVOIRS]\n"
        "R1 100\n"
        "[PIPES]\n"
        "P1 R1 J1 1000 304.8 130\n";
    PipeNetwork net = parse_inp(text, {});
    CHECK(net.junctions.size() == 1);
    CHECK(net.junctions[0].demand_m3s == doctest::Approx(0.1));
}

TEST_CASE("config errors are ConfigInvalid") {
    const std::string text = testutil::read_file(testutil::data_path("onepipe.inp"));
    SUBCASE("min-head override for unknown junction") {
        NetworkConfig config = config4();
        config.min_head_overrides["GHOST"] = 25.0;
        CHECK_THROWS_AS(parse_inp(text, config), ConfigInvalid);
    }
    SUBCASE("duplicate table name") {
        NetworkConfig config = config4();
        config.tables.push_back(testutil::table4());
        CHECK_THROWS_AS(parse_inp(text, config), ConfigInvalid);
    }
    SUBCASE("mapping for unknown pipe") {
        NetworkConfig config = config4();
        config.pipe_tables["GHOST"] = "default";
        CHECK_THROWS_AS(parse_inp(text, config), ConfigInvalid);
    }
    SUBCASE("mapping to unknown table") {
        NetworkConfig config = config4();
        config.pipe_tables["P1"] = "missing";
        CHECK_THROWS_AS(parse_inp(text, config), ConfigInvalid);
    }
}

TEST_CASE("cost table CSV parsing") {
    OptionTable table = parse_cost_table(testutil::read_file(testutil::data_path("options4.csv")));
    REQUIRE(table.options.size() == 4);
    CHECK(table.name == "default");
    CHECK(table.options[0].diameter_m == doctest::Approx(0.2032).epsilon(1e-12));
    CHECK(table.options[3].unit_cost == 90.0);

    const std::string header = "index,diameter_mm,unit_cost\n";
    CHECK_THROWS_AS(parse_cost_table("diameter,cost\n0,1\n"), ParseError);
    CHECK_THROWS_AS(parse_cost_table(header), ParseError);  // no rows
    CHECK_THROWS_AS(parse_cost_table(header + "0,100,10\n2,200,20\n"), ParseError);
    CHECK_THROWS_AS(parse_cost_table(header + "0,200,10\n1,100,20\n"), ParseError);
    try {
        parse_cost_table(header + "0,100,10\n2,200,20\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::NonContiguousIndex);
        CHECK(e.line() == 3);
    }
    try {
        parse_cost_table(header + "0,200,10\n1,100,20\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::NonAscendingDiameter);
    }
}
