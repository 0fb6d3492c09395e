#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "aquafront/errors.hpp"
#include "aquafront/nsga2.hpp"
#include "aquafront/objectives.hpp"
#include "aquafront/rng.hpp"

namespace aquafront {

using CellCoord = std::array<long long, 2>;

// Objectives are (cost, resilience). The grid has fixed cell sizes and no
// extent limits: any real objective pair maps to some integer cell.
CellCoord cell_of(const std::array<double, 2>& objectives, const std::array<double, 2>& widths,
                  const std::array<double, 2>& origin);

struct ArchiveParams {
    std::array<double, 2> cell_widths{1.0, 1.0};
    std::array<double, 2> origin{0.0, 0.0};
    int max_occupancy = 64;
};

struct ArchiveEntry {
    std::vector<int> indices;
    Evaluation eval;
};

enum class InsertOutcome { Inserted, Dominated, Duplicate, CellFull };

struct InsertResult {
    InsertOutcome outcome;
    int removed = 0;  // stored solutions displaced by the candidate
};

// Globally non-dominated store over feasible solutions. A two-objective ND
// set is a staircase: costs are unique and resilience rises with cost, which
// a cost-keyed ordered map exploits for O(log n + removals) insertion.
class HypergridArchive {
  public:
    explicit HypergridArchive(const ArchiveParams& params);

    InsertResult try_insert(const ArchiveEntry& candidate);

    // Cell picked with probability proportional to 1/occupancy, then a
    // uniform member of that cell. Throws EmptyArchive.
    ArchiveEntry select_roulette(Rng& rng) const;

    // All stored solutions in ascending cost order.
    std::vector<ArchiveEntry> snapshot() const;

    // True when an identical index vector is stored (saves a re-evaluation).
    bool contains_design(const std::vector<int>& indices) const;

    std::size_t size() const { return stairs_.size(); }
    bool empty() const { return stairs_.empty(); }
    std::uint64_t rejected_full_count() const { return rejected_full_; }
    const ArchiveParams& params() const { return params_; }

    // Occupancy per non-empty cell, for stats and tests.
    std::map<CellCoord, int> cell_occupancy() const;

  private:
    struct Stored {
        double resilience;
        CellCoord cell;
        std::vector<int> indices;
        Evaluation eval;
    };

    using Stairs = std::map<double, Stored>;  // key: cost

    ArchiveParams params_;
    Stairs stairs_;
    std::map<CellCoord, std::vector<const Stored*>> cells_;
    std::set<std::vector<int>> designs_;
    std::uint64_t rejected_full_ = 0;

    void cell_erase(const Stored& s);
};

}  // namespace aquafront
