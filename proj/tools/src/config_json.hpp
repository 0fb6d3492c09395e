#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "aquafront/archive.hpp"
#include "aquafront/network.hpp"

namespace aquafront::cli {

struct NetworkBundle {
    PipeNetwork net;
    std::optional<ArchiveParams> archive;  // archive section of the sidecar, when present
};

// Loads an INP document plus its optional JSON sidecar and cost-table CSV.
// `costs_path`, when non-empty, becomes (or replaces) the table named
// "default". Table files referenced from the sidecar resolve against the
// sidecar's directory.
NetworkBundle load_bundle(const std::string& inp_path, const std::string& costs_path,
                          const std::string& config_path);

// Cell widths sized so the priced cost span of the decision space covers 256
// cells and the unit resilience interval another 256. A degenerate cost span
// (every pipe single-priced) falls back to unit cells.
ArchiveParams derive_archive_params(const PipeNetwork& net);

std::string read_text_file(const std::string& path);  // IoFailure when unreadable

// Temp-file-and-rename write; IoFailure on any step.
void write_text_atomic(const std::string& path, std::string_view content);

}  // namespace aquafront::cli
