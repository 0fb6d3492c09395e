#include "aquafront/archive.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

namespace aquafront {

CellCoord cell_of(const std::array<double, 2>& objectives, const std::array<double, 2>& widths,
                  const std::array<double, 2>& origin) {
    CellCoord coord;
    for (int k = 0; k < 2; ++k)
        coord[k] = static_cast<long long>(std::floor((objectives[k] - origin[k]) / widths[k]));
    return coord;
}

HypergridArchive::HypergridArchive(const ArchiveParams& params) : params_(params) {
    if (!(params.cell_widths[0] > 0.0) || !(params.cell_widths[1] > 0.0))
        throw ConfigInvalid("archive cell widths must be positive");
    if (params.max_occupancy < 1) throw ConfigInvalid("archive max occupancy must be at least 1");
}

void HypergridArchive::cell_erase(const Stored& s) {
    auto it = cells_.find(s.cell);
    assert(it != cells_.end());
    auto& members = it->second;
    members.erase(std::find(members.begin(), members.end(), &s));
    if (members.empty()) cells_.erase(it);
}

InsertResult HypergridArchive::try_insert(const ArchiveEntry& candidate) {
    if (!candidate.eval.feasible)
        throw std::logic_error("infeasible candidate offered to the archive");
    const double c = candidate.eval.cost;
    const double r = candidate.eval.resilience;

    if (auto at = stairs_.find(c); at != stairs_.end()) {
        if (at->second.resilience == r) return {InsertOutcome::Duplicate, 0};
        if (at->second.resilience > r) return {InsertOutcome::Dominated, 0};
    }
    auto tail = stairs_.lower_bound(c);
    if (tail != stairs_.begin()) {
        // Highest-resilience stored solution that costs no more than the
        // candidate (strictly less, the equal-cost case returned above).
        auto pred = std::prev(tail);
        if (pred->second.resilience >= r) return {InsertOutcome::Dominated, 0};
    }

    // Solutions the candidate dominates form a contiguous run of the tail.
    CellCoord cell = cell_of({c, r}, params_.cell_widths, params_.origin);
    int removed = 0, removed_in_cell = 0;
    auto end = tail;
    while (end != stairs_.end() && end->second.resilience <= r) {
        ++removed;
        if (end->second.cell == cell) ++removed_in_cell;
        ++end;
    }

    int occupancy = 0;
    if (auto it = cells_.find(cell); it != cells_.end())
        occupancy = static_cast<int>(it->second.size());
    if (occupancy - removed_in_cell >= params_.max_occupancy) {
        ++rejected_full_;
        return {InsertOutcome::CellFull, 0};
    }

    for (auto it = tail; it != end;) {
        cell_erase(it->second);
        designs_.erase(it->second.indices);
        it = stairs_.erase(it);
    }
    auto [pos, inserted] =
        stairs_.emplace(c, Stored{r, cell, candidate.indices, candidate.eval});
    assert(inserted);
    cells_[cell].push_back(&pos->second);
    designs_.insert(candidate.indices);
    return {InsertOutcome::Inserted, removed};
}

ArchiveEntry HypergridArchive::select_roulette(Rng& rng) const {
    if (stairs_.empty()) throw EmptyArchive("roulette selection from an empty archive");

    double total = 0.0;
    for (const auto& [coord, members] : cells_) total += 1.0 / static_cast<double>(members.size());

    double ticket = rng.uniform01() * total;
    const std::vector<const Stored*>* chosen = &cells_.rbegin()->second;
    for (const auto& [coord, members] : cells_) {
        ticket -= 1.0 / static_cast<double>(members.size());
        if (ticket < 0.0) {
            chosen = &members;
            break;
        }
    }
    const Stored* s = (*chosen)[rng.below(chosen->size())];
    return {s->indices, s->eval};
}

std::vector<ArchiveEntry> HypergridArchive::snapshot() const {
    std::vector<ArchiveEntry> out;
    out.reserve(stairs_.size());
    for (const auto& [cost, s] : stairs_) out.push_back({s.indices, s.eval});
    return out;
}

bool HypergridArchive::contains_design(const std::vector<int>& indices) const {
    return designs_.count(indices) != 0;
}

std::map<CellCoord, int> HypergridArchive::cell_occupancy() const {
    std::map<CellCoord, int> out;
    for (const auto& [coord, members] : cells_) out[coord] = static_cast<int>(members.size());
    return out;
}

}  // namespace aquafront
