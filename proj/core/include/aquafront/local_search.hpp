#pragma once

#include <cstdint>
#include <vector>

#include "aquafront/archive.hpp"
#include "aquafront/objectives.hpp"

namespace aquafront {

// All index vectors one +-1 step away in a single coordinate; moves clamped
// into a wall are dropped, so the result has between N_real and 2*N_real
// members. Order: per coordinate, -1 step then +1 step.
std::vector<std::vector<int>> neighborhood(const std::vector<int>& indices,
                                           const PipeNetwork& net);

struct LsStats {
    std::uint64_t evaluations = 0;        // hydraulic solves spent by the pass
    std::uint64_t inserted = 0;           // neighbors accepted by the archive
    std::uint64_t dominated_removed = 0;  // stored solutions displaced
};

// One sweep over a frozen snapshot of the archive: every neighbor of every
// snapshot member is evaluated once and offered to the archive if feasible.
// Neighbors whose exact index vector is already stored, or was already
// evaluated earlier in this pass, are skipped without spending a solve.
// subsample > 0 limits the sweep to that many snapshot members, evenly
// spaced across the cost-sorted snapshot; 0 sweeps all of it.
LsStats local_search_pass(HypergridArchive& archive, Evaluator& evaluator,
                          std::size_t subsample = 0);

}  // namespace aquafront
