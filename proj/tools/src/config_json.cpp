#include "config_json.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "aquafront/errors.hpp"
#include "aquafront/inp.hpp"

namespace aquafront::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

OptionTable table_from_json(const json& spec, const fs::path& base) {
    OptionTable table;
    table.name = spec.at("name").get<std::string>();
    const bool has_file = spec.contains("file");
    const bool has_options = spec.contains("options");
    if (has_file == has_options)
        throw ConfigInvalid("table '" + table.name + "' needs exactly one of \"file\" or \"options\"");
    if (has_file) {
        const fs::path file = base / fs::path(spec.at("file").get<std::string>());
        return parse_cost_table(read_text_file(file.string()), table.name);
    }
    for (const json& row : spec.at("options")) {
        PipeOption option;
        option.diameter_m = row.at("diameter_mm").get<double>() * 1e-3;
        option.unit_cost = row.at("unit_cost").get<double>();
        table.options.push_back(option);
    }
    return table;
}

void apply_sidecar(const json& doc, const fs::path& base, NetworkConfig& config,
                   std::optional<ArchiveParams>& archive) {
    if (doc.contains("units")) {
        const json& units = doc.at("units");
        config.units = UnitSystem::named(units.value("length", "m"), units.value("flow", "m3/s"),
                                         units.value("diameter", "m"));
    }
    config.default_min_head_m = doc.value("min_head_m", 0.0);
    if (doc.contains("min_head_overrides_m"))
        for (const auto& [id, value] : doc.at("min_head_overrides_m").items())
            config.min_head_overrides[id] = value.get<double>();
    if (doc.contains("tables"))
        for (const json& spec : doc.at("tables")) config.tables.push_back(table_from_json(spec, base));
    if (doc.contains("pipe_tables"))
        for (const auto& [pipe, table] : doc.at("pipe_tables").items())
            config.pipe_tables[pipe] = table.get<std::string>();
    if (doc.contains("archive")) {
        const json& section = doc.at("archive");
        ArchiveParams params;
        if (section.contains("cell_widths")) {
            const auto widths = section.at("cell_widths").get<std::vector<double>>();
            if (widths.size() != 2) throw ConfigInvalid("archive.cell_widths needs two entries");
            params.cell_widths = {widths[0], widths[1]};
        }
        if (section.contains("origin")) {
            const auto origin = section.at("origin").get<std::vector<double>>();
            if (origin.size() != 2) throw ConfigInvalid("archive.origin needs two entries");
            params.origin = {origin[0], origin[1]};
        }
        params.max_occupancy = section.value("max_occupancy", params.max_occupancy);
        archive = params;
    }
}

}  // namespace

NetworkBundle load_bundle(const std::string& inp_path, const std::string& costs_path,
                          const std::string& config_path) {
    NetworkConfig config;
    std::optional<ArchiveParams> archive;
    if (!config_path.empty()) {
        const std::string text = read_text_file(config_path);
        try {
            apply_sidecar(json::parse(text), fs::path(config_path).parent_path(), config, archive);
        } catch (const json::exception& e) {
            throw ConfigInvalid(config_path + ": " + e.what());
        }
    }
    if (!costs_path.empty()) {
        OptionTable table = parse_cost_table(read_text_file(costs_path), "default");
        bool replaced = false;
        for (OptionTable& existing : config.tables)
            if (existing.name == "default") {
                existing = table;
                replaced = true;
            }
        if (!replaced) config.tables.push_back(std::move(table));
    }
    return {parse_inp(read_text_file(inp_path), config), archive};
}

ArchiveParams derive_archive_params(const PipeNetwork& net) {
    double span = 0.0;
    for (const Pipe& pipe : net.pipes) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const PipeOption& option : net.table_for(pipe).options) {
            lo = std::min(lo, option.unit_cost);
            hi = std::max(hi, option.unit_cost);
        }
        span += pipe.length_m * (hi - lo);
    }
    ArchiveParams params;
    params.cell_widths = {span > 0.0 ? span / 256.0 : 1.0, 1.0 / 256.0};
    return params;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoFailure("cannot read " + path);
    return std::move(buffer).str();
}

void write_text_atomic(const std::string& path, std::string_view content) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) throw IoFailure("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoFailure("cannot replace " + path);
    }
}

}  // namespace aquafront::cli
