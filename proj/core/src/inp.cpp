#include "aquafront/inp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace aquafront {

namespace {

constexpr double kFootToM = 0.3048;
constexpr double kInchToM = 0.0254;

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::optional<double> to_double(const std::string& tok) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// Strips ';' comments, splits on whitespace, drops blank lines.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++number;
        if (auto semi = raw.find(';'); semi != std::string_view::npos) raw = raw.substr(0, semi);
        Line line{number, {}};
        std::string tok;
        std::istringstream in{std::string(raw)};
        while (in >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return lines;
}

double number_field(const Line& line, std::size_t idx, const char* what) {
    auto v = to_double(line.tokens[idx]);
    if (!v)
        throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                         std::string("cannot parse ") + what + " '" + line.tokens[idx] + "'");
    return *v;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

UnitSystem UnitSystem::named(const std::string& length, const std::string& flow,
                             const std::string& diameter) {
    UnitSystem u;
    if (length == "m")
        u.length_to_m = 1.0;
    else if (length == "ft")
        u.length_to_m = kFootToM;
    else
        throw ConfigInvalid("unknown length unit '" + length + "'");

    if (flow == "m3/s")
        u.flow_to_m3s = 1.0;
    else if (flow == "L/s")
        u.flow_to_m3s = 1e-3;
    else if (flow == "m3/h")
        u.flow_to_m3s = 1.0 / 3600.0;
    else if (flow == "cfs")
        u.flow_to_m3s = kFootToM * kFootToM * kFootToM;
    else if (flow == "gpm")
        u.flow_to_m3s = 3.785411784e-3 / 60.0;
    else
        throw ConfigInvalid("unknown flow unit '" + flow + "'");

    if (diameter == "m")
        u.diameter_to_m = 1.0;
    else if (diameter == "mm")
        u.diameter_to_m = 1e-3;
    else if (diameter == "in")
        u.diameter_to_m = kInchToM;
    else
        throw ConfigInvalid("unknown diameter unit '" + diameter + "'");
    return u;
}

PipeNetwork parse_inp(std::string_view text, const NetworkConfig& config) {
    enum class Section { None, Title, Junctions, Reservoirs, Pipes, Pumps, Coordinates, End };

    PipeNetwork net;
    const UnitSystem& u = config.units;

    // Diameter column per pipe, kept for the no-table fallback.
    std::vector<double> inp_diameters;
    std::vector<int> pipe_lines;

    Section section = Section::None;
    for (const Line& line : tokenize(text)) {
        const std::string& head = line.tokens.front();
        if (head.front() == '[') {
            std::string name = upper(head);
            for (std::size_t i = 1; i < line.tokens.size(); ++i) name += upper(line.tokens[i]);
            if (name == "[TITLE]")
                section = Section::Title;
            else if (name == "[JUNCTIONS]")
                section = Section::Junctions;
            else if (name == "[RESERVOIRS]")
                section = Section::Reservoirs;
            else if (name == "[PIPES]")
                section = Section::Pipes;
            else if (name == "[PUMPS]")
                section = Section::Pumps;
            else if (name == "[COORDINATES]")
                section = Section::Coordinates;
            else if (name == "[END]")
                section = Section::End;
            else
                throw ParseError(ParseErrorKind::UnknownSection, line.number,
                                 "unsupported section " + name);
            continue;
        }

        switch (section) {
            case Section::None:
                throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                 "record before any section header");
            case Section::Title:
            case Section::End:
                break;
            case Section::Junctions: {
                if (line.tokens.size() < 2 || line.tokens.size() > 3)
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "junction record needs: id elevation [demand]");
                Junction j;
                j.id = line.tokens[0];
                j.elevation_m = number_field(line, 1, "elevation") * u.length_to_m;
                j.demand_m3s = line.tokens.size() > 2 ? number_field(line, 2, "demand") * u.flow_to_m3s : 0.0;
                j.min_head_m = config.default_min_head_m;
                net.junctions.push_back(std::move(j));
                break;
            }
            case Section::Reservoirs: {
                if (line.tokens.size() != 2)
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "reservoir record needs: id head");
                Reservoir r;
                r.id = line.tokens[0];
                r.head_m = number_field(line, 1, "head") * u.length_to_m;
                net.reservoirs.push_back(std::move(r));
                break;
            }
            case Section::Pipes: {
                if (line.tokens.size() < 6 || line.tokens.size() > 8)
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "pipe record needs: id node1 node2 length diameter roughness "
                                     "[minorloss] [status]");
                Pipe p;
                p.id = line.tokens[0];
                p.from = line.tokens[1];
                p.to = line.tokens[2];
                p.length_m = number_field(line, 3, "length") * u.length_to_m;
                double diameter = number_field(line, 4, "diameter") * u.diameter_to_m;
                p.roughness = number_field(line, 5, "roughness");
                if (line.tokens.size() > 6) {
                    if (number_field(line, 6, "minor loss") != 0.0)
                        throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                         "minor losses are not supported");
                }
                if (line.tokens.size() > 7 && upper(line.tokens[7]) != "OPEN")
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "pipe status must be Open");
                net.pipes.push_back(std::move(p));
                inp_diameters.push_back(diameter);
                pipe_lines.push_back(line.number);
                break;
            }
            case Section::Pumps: {
                if (line.tokens.size() != 5 || upper(line.tokens[3]) != "POWER")
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "pump record needs: id node1 node2 POWER kw "
                                     "(curve pumps are not supported)");
                Pump p;
                p.id = line.tokens[0];
                p.from = line.tokens[1];
                p.to = line.tokens[2];
                p.power_w = number_field(line, 4, "pump power") * 1000.0;
                net.pumps.push_back(std::move(p));
                break;
            }
            case Section::Coordinates: {
                if (line.tokens.size() != 3)
                    throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                                     "coordinate record needs: id x y");
                number_field(line, 1, "x coordinate");
                number_field(line, 2, "y coordinate");
                const std::string& id = line.tokens[0];
                auto is_node = [&](const std::string& n) {
                    return std::any_of(net.junctions.begin(), net.junctions.end(),
                                       [&](const Junction& j) { return j.id == n; }) ||
                           std::any_of(net.reservoirs.begin(), net.reservoirs.end(),
                                       [&](const Reservoir& r) { return r.id == n; });
                };
                if (!is_node(id))
                    throw ParseError(ParseErrorKind::DanglingReference, line.number,
                                     "coordinates for unknown node " + id);
                break;
            }
        }
    }

    for (auto& j : net.junctions) {
        auto it = config.min_head_overrides.find(j.id);
        if (it != config.min_head_overrides.end()) j.min_head_m = it->second;
    }
    for (const auto& [id, _] : config.min_head_overrides) {
        if (std::none_of(net.junctions.begin(), net.junctions.end(),
                         [&](const Junction& j) { return j.id == id; }))
            throw ConfigInvalid("min-head override for unknown junction " + id);
    }

    // Attach option tables: configured tables by name, with a per-pipe
    // single-diameter fallback built from the diameter column.
    net.option_tables = config.tables;
    int default_table = -1;
    std::map<std::string, int> table_index;
    for (std::size_t i = 0; i < net.option_tables.size(); ++i) {
        if (!table_index.emplace(net.option_tables[i].name, static_cast<int>(i)).second)
            throw ConfigInvalid("duplicate option table name " + net.option_tables[i].name);
        if (net.option_tables[i].name == "default") default_table = static_cast<int>(i);
    }
    for (const auto& [pipe_id, table_name] : config.pipe_tables) {
        if (std::none_of(net.pipes.begin(), net.pipes.end(),
                         [&](const Pipe& p) { return p.id == pipe_id; }))
            throw ConfigInvalid("table mapping for unknown pipe " + pipe_id);
        if (!table_index.count(table_name))
            throw ConfigInvalid("pipe " + pipe_id + " mapped to unknown table " + table_name);
    }
    for (std::size_t i = 0; i < net.pipes.size(); ++i) {
        Pipe& p = net.pipes[i];
        auto mapped = config.pipe_tables.find(p.id);
        if (mapped != config.pipe_tables.end()) {
            p.option_table = table_index.at(mapped->second);
        } else if (default_table >= 0) {
            p.option_table = default_table;
        } else {
            OptionTable t;
            t.name = "inp:" + p.id;
            t.options.push_back({inp_diameters[i], 0.0});
            if (inp_diameters[i] < 0.0)
                throw ParseError(ParseErrorKind::MalformedRecord, pipe_lines[i],
                                 "pipe " + p.id + " has negative diameter");
            net.option_tables.push_back(std::move(t));
            p.option_table = static_cast<int>(net.option_tables.size() - 1);
        }
    }

    net.validate();
    return net;
}

std::string serialize_inp(const PipeNetwork& net) {
    std::ostringstream out;
    out << "[JUNCTIONS]\n";
    for (const auto& j : net.junctions)
        out << j.id << ' ' << format_number(j.elevation_m) << ' ' << format_number(j.demand_m3s)
            << '\n';
    out << "\n[RESERVOIRS]\n";
    for (const auto& r : net.reservoirs) out << r.id << ' ' << format_number(r.head_m) << '\n';
    out << "\n[PIPES]\n";
    for (const auto& p : net.pipes) {
        double diameter = net.table_for(p).options.back().diameter_m;
        out << p.id << ' ' << p.from << ' ' << p.to << ' ' << format_number(p.length_m) << ' '
            << format_number(diameter) << ' ' << format_number(p.roughness) << '\n';
    }
    if (!net.pumps.empty()) {
        out << "\n[PUMPS]\n";
        for (const auto& p : net.pumps)
            out << p.id << ' ' << p.from << ' ' << p.to << " POWER "
                << format_number(p.power_w / 1000.0) << '\n';
    }
    out << "\n[END]\n";
    return out.str();
}

OptionTable parse_cost_table(std::string_view csv, const std::string& name) {
    OptionTable table;
    table.name = name;

    std::vector<Line> lines = tokenize(csv);
    if (lines.empty())
        throw ParseError(ParseErrorKind::MalformedRecord, 1, "empty cost table");

    std::size_t start = 0;
    {
        // Header `index,diameter_mm,unit_cost` is required.
        std::string header;
        for (const auto& t : lines[0].tokens) header += t;
        if (header != "index,diameter_mm,unit_cost")
            throw ParseError(ParseErrorKind::MalformedRecord, lines[0].number,
                             "cost table header must be index,diameter_mm,unit_cost");
        start = 1;
    }

    int expected = 0;
    for (std::size_t li = start; li < lines.size(); ++li) {
        const Line& line = lines[li];
        std::string joined;
        for (const auto& t : line.tokens) joined += t;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : joined) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 3)
            throw ParseError(ParseErrorKind::MalformedRecord, line.number,
                             "cost table row needs index,diameter_mm,unit_cost");
        auto idx = to_double(fields[0]);
        auto dmm = to_double(fields[1]);
        auto cost = to_double(fields[2]);
        if (!idx || !dmm || !cost || *idx != std::floor(*idx))
            throw ParseError(ParseErrorKind::MalformedRecord, line.number, "cannot parse cost table row");
        if (static_cast<int>(*idx) != expected)
            throw ParseError(ParseErrorKind::NonContiguousIndex, line.number,
                             "expected index " + std::to_string(expected) + ", got " + fields[0]);
        ++expected;
        PipeOption option{*dmm * 1e-3, *cost};
        if (!table.options.empty() && option.diameter_m <= table.options.back().diameter_m)
            throw ParseError(ParseErrorKind::NonAscendingDiameter, line.number,
                             "diameters must be strictly ascending");
        table.options.push_back(option);
    }
    if (table.options.empty())
        throw ParseError(ParseErrorKind::MalformedRecord, lines[0].number, "cost table has no rows");
    return table;
}

}  // namespace aquafront
