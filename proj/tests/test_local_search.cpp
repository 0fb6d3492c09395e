#include <set>
#include <vector>

#include "doctest.h"

#include "aquafront/archive.hpp"
#include "aquafront/local_search.hpp"
#include "aquafront/objectives.hpp"
#include "helpers.hpp"

using namespace aquafront;

namespace {

ArchiveParams loose_params() {
    ArchiveParams p;
    p.cell_widths = {1000.0, 0.01};
    p.max_occupancy = 1 << 20;
    return p;
}

void seed(HypergridArchive& archive, Evaluator& evaluator, const std::vector<int>& indices) {
    Evaluation eval = evaluator.evaluate_indices(indices);
    REQUIRE(eval.feasible);
    REQUIRE(archive.try_insert({indices, eval}).outcome == InsertOutcome::Inserted);
}

}  // namespace

TEST_CASE("neighborhood enumerates clamped single steps") {
    PipeNetwork net = testutil::make_tiny3();  // 4 options per pipe
    SUBCASE("interior and walls") {
        auto n = neighborhood({0, 2, 3}, net);
        std::vector<std::vector<int>> expected = {
            {1, 2, 3},  // coord 0: only +1, -1 hits the wall
            {0, 1, 3},  // coord 1: -1
            {0, 3, 3},  // coord 1: +1
            {0, 2, 2},  // coord 2: only -1, +1 hits the wall
        };
        CHECK(n == expected);
    }
    SUBCASE("interior point has 2 NReal neighbors") {
        auto n = neighborhood({1, 1, 1}, net);
        CHECK(n.size() == 6);
        std::set<std::vector<int>> unique(n.begin(), n.end());
        CHECK(unique.size() == 6);
        for (const auto& v : n) {
            int moved = 0;
            for (int i = 0; i < 3; ++i) moved += v[i] != 1;
            CHECK(moved == 1);
        }
    }
}

TEST_CASE("a pass evaluates each fresh neighbor exactly once") {
    PipeNetwork net = testutil::make_tiny3();
    Evaluator evaluator(net);
    HypergridArchive archive(loose_params());
    // {2,2,0} and {2,2,2} share the neighbor {2,2,1}
    seed(archive, evaluator, {2, 2, 0});
    seed(archive, evaluator, {2, 2, 2});
    REQUIRE(archive.size() == 2);

    const std::size_t before = archive.size();
    LsStats stats = local_search_pass(archive, evaluator);
    // 5 fresh neighbors around each member, the shared one spent once
    CHECK(stats.evaluations == 10);
    CHECK(archive.size() == before + stats.inserted - stats.dominated_removed);
}

TEST_CASE("stored designs are not re-evaluated") {
    PipeNetwork net = testutil::make_tiny3();
    Evaluator evaluator(net);
    HypergridArchive archive(loose_params());
    seed(archive, evaluator, {2, 2, 0});
    seed(archive, evaluator, {2, 2, 1});  // direct neighbor of the first
    REQUIRE(archive.size() == 2);

    LsStats stats = local_search_pass(archive, evaluator);
    // member 1: {1,2,0},{3,2,0},{2,1,0},{2,3,0} (its fifth neighbor {2,2,1} is stored)
    // member 2: {1,2,1},{3,2,1},{2,1,1},{2,3,1},{2,2,2} (its sixth, {2,2,0}, is stored)
    CHECK(stats.evaluations == 9);
}

TEST_CASE("subsample sweeps evenly spaced snapshot members") {
    PipeNetwork net = testutil::make_tiny3();
    Evaluator evaluator(net);
    HypergridArchive archive(loose_params());
    // ascending cost: 129000, 132000, 144000, 162000
    seed(archive, evaluator, {1, 2, 0});
    seed(archive, evaluator, {2, 1, 0});
    seed(archive, evaluator, {2, 2, 0});
    seed(archive, evaluator, {3, 1, 0});
    REQUIRE(archive.size() == 4);

    LsStats stats = local_search_pass(archive, evaluator, 2);
    // picks members 0 and 2: {1,2,0} and {2,2,0}
    // {1,2,0}: {0,2,0},{1,1,0},{1,3,0},{1,2,1} fresh ({2,2,0} stored)
    // {2,2,0}: {3,2,0},{2,3,0},{2,2,1} fresh ({1,2,0},{2,1,0} stored)
    CHECK(stats.evaluations == 7);

    SUBCASE("subsample at least the size sweeps everything") {
        HypergridArchive full(loose_params());
        Evaluator ev2(net);
        seed(full, ev2, {2, 2, 0});
        LsStats all = local_search_pass(full, ev2, 99);
        CHECK(all.evaluations == 5);
    }
}

TEST_CASE("inserted counts displacements consistently") {
    PipeNetwork net = testutil::make_synth8();
    Evaluator evaluator(net);
    HypergridArchive archive(loose_params());
    seed(archive, evaluator, {3, 3, 3, 3, 3, 3, 3, 3});
    seed(archive, evaluator, {5, 5, 5, 5, 5, 5, 5, 5});

    for (int pass = 0; pass < 3; ++pass) {
        const std::size_t before = archive.size();
        LsStats stats = local_search_pass(archive, evaluator);
        CHECK(archive.size() == before + stats.inserted - stats.dominated_removed);
        CHECK(stats.inserted <= stats.evaluations);
    }
    CHECK(archive.size() > 2);  // the sweep finds new trade-offs on this grid
}

TEST_CASE("empty archive is a no-op") {
    PipeNetwork net = testutil::make_tiny3();
    Evaluator evaluator(net);
    HypergridArchive archive(loose_params());
    LsStats stats = local_search_pass(archive, evaluator);
    CHECK(stats.evaluations == 0);
    CHECK(stats.inserted == 0);
}
