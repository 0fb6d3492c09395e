#include "aquafront/local_search.hpp"

#include <set>

namespace aquafront {

std::vector<std::vector<int>> neighborhood(const std::vector<int>& indices,
                                           const PipeNetwork& net) {
    const auto& upper = net.gene_upper_bounds();
    std::vector<std::vector<int>> out;
    out.reserve(2 * indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] > 0) {
            out.push_back(indices);
            --out.back()[i];
        }
        if (indices[i] < static_cast<int>(upper[i])) {
            out.push_back(indices);
            ++out.back()[i];
        }
    }
    return out;
}

LsStats local_search_pass(HypergridArchive& archive, Evaluator& evaluator,
                          std::size_t subsample) {
    LsStats stats;
    std::vector<ArchiveEntry> frozen = archive.snapshot();
    if (frozen.empty()) return stats;

    std::vector<const ArchiveEntry*> sweep;
    if (subsample > 0 && subsample < frozen.size()) {
        // Evenly spaced picks across the cost-sorted snapshot.
        for (std::size_t k = 0; k < subsample; ++k)
            sweep.push_back(&frozen[k * frozen.size() / subsample]);
    } else {
        for (const auto& e : frozen) sweep.push_back(&e);
    }

    std::set<std::vector<int>> visited;
    for (const ArchiveEntry* origin : sweep) {
        for (auto& n : neighborhood(origin->indices, evaluator.network())) {
            if (archive.contains_design(n)) continue;  // objectives already stored
            if (!visited.insert(n).second) continue;   // evaluated earlier this pass
            Evaluation eval = evaluator.evaluate_indices(n);
            ++stats.evaluations;
            if (!eval.feasible) continue;
            InsertResult res = archive.try_insert({std::move(n), eval});
            if (res.outcome == InsertOutcome::Inserted) {
                ++stats.inserted;
                stats.dominated_removed += static_cast<std::uint64_t>(res.removed);
            }
        }
    }
    return stats;
}

}  // namespace aquafront
