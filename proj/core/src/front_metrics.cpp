#include "aquafront/front_metrics.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace aquafront {

namespace {

bool obj_dominates(const FrontPoint& a, const FrontPoint& b) {
    return a.cost <= b.cost && a.resilience >= b.resilience &&
           (a.cost < b.cost || a.resilience > b.resilience);
}

bool close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

bool matches(const FrontPoint& a, const FrontPoint& b, const CompareOptions& opt) {
    if (opt.match == MatchSpace::Decision) return a.indices == b.indices;
    return close(a.cost, b.cost, opt.tol) && close(a.resilience, b.resilience, opt.tol);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<FrontPoint> to_front(const std::vector<ArchiveEntry>& entries) {
    std::vector<FrontPoint> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back({e.eval.cost, e.eval.resilience, e.indices});
    return out;
}

void validate_front(const std::vector<FrontPoint>& front) {
    for (std::size_t i = 0; i < front.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (front[j].cost == front[i].cost && front[j].resilience == front[i].resilience)
                throw InputNotAFront(static_cast<int>(i + 1),
                                     "duplicate objective vector at row " + std::to_string(i + 1));
            if (obj_dominates(front[j], front[i]) || obj_dominates(front[i], front[j]))
                throw InputNotAFront(static_cast<int>(i + 1),
                                     "dominated member at row " + std::to_string(i + 1));
        }
    }
}

ComparisonReport compare_fronts(const std::vector<FrontPoint>& pf1,
                                const std::vector<FrontPoint>& pf2,
                                const CompareOptions& options) {
    validate_front(pf1);
    validate_front(pf2);

    auto rejected_by = [](const FrontPoint& p, const std::vector<FrontPoint>& other) {
        return std::any_of(other.begin(), other.end(),
                           [&](const FrontPoint& q) { return obj_dominates(q, p); });
    };

    std::vector<const FrontPoint*> acc1, acc2;
    for (const auto& p : pf1)
        if (!rejected_by(p, pf2)) acc1.push_back(&p);
    for (const auto& p : pf2)
        if (!rejected_by(p, pf1)) acc2.push_back(&p);

    auto common_count = [&](const std::vector<const FrontPoint*>& from,
                            const std::vector<const FrontPoint*>& in) {
        std::uint64_t n = 0;
        for (const FrontPoint* p : from)
            if (std::any_of(in.begin(), in.end(),
                            [&](const FrontPoint* q) { return matches(*p, *q, options); }))
                ++n;
        return n;
    };
    std::uint64_t common1 = common_count(acc1, acc2);
    std::uint64_t common2 = common_count(acc2, acc1);
    // Within-front duplicates are rejected by validation and matching is
    // symmetric, so both sides agree on the common count.
    assert(common1 == common2);

    ComparisonReport r;
    r.n1_total = pf1.size();
    r.n2_total = pf2.size();
    r.n1_accepted = acc1.size();
    r.n2_accepted = acc2.size();
    r.n1_rejected = r.n1_total - r.n1_accepted;
    r.n2_rejected = r.n2_total - r.n2_accepted;
    r.n_common = common1;
    r.n1_unique = r.n1_accepted - r.n_common;
    r.n2_unique = r.n2_accepted - common2;

    assert(r.n1_total == r.n1_accepted + r.n1_rejected);
    assert(r.n2_total == r.n2_accepted + r.n2_rejected);
    assert(r.n1_accepted == r.n_common + r.n1_unique);
    assert(r.n2_accepted == r.n_common + r.n2_unique);
    return r;
}

double hypervolume_2d(const std::vector<FrontPoint>& front,
                      const std::array<double, 2>& ref_point) {
    const double rx = ref_point[0], ry = ref_point[1];
    for (std::size_t i = 0; i < front.size(); ++i) {
        const auto& p = front[i];
        bool dominates_ref = p.cost <= rx && p.resilience >= ry && (p.cost < rx || p.resilience > ry);
        if (!dominates_ref)
            throw RefPointInvalid("reference point is not dominated by front member " +
                                  std::to_string(i + 1));
    }
    if (front.empty()) return 0.0;

    // Reduce to the non-dominated staircase, ascending cost.
    std::vector<std::array<double, 2>> pts;
    pts.reserve(front.size());
    for (const auto& p : front) pts.push_back({p.cost, p.resilience});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] > b[1];
    });
    std::vector<std::array<double, 2>> stair;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        if (p[1] <= best) continue;
        best = p[1];
        stair.push_back(p);
    }

    double area = 0.0;
    for (std::size_t i = 0; i < stair.size(); ++i) {
        double next_cost = i + 1 < stair.size() ? stair[i + 1][0] : rx;
        area += (next_cost - stair[i][0]) * (stair[i][1] - ry);
    }
    return area;
}

std::string front_to_csv(const std::vector<FrontPoint>& front) {
    std::size_t n_idx = front.empty() ? 0 : front.front().indices.size();
    std::ostringstream out;
    out << "cost,resilience";
    for (std::size_t k = 1; k <= n_idx; ++k) out << ",idx_" << k;
    out << '\n';
    for (const auto& p : front) {
        if (p.indices.size() != n_idx)
            throw ConfigInvalid("front members disagree on decision vector length");
        out << fmt(p.cost) << ',' << fmt(p.resilience);
        for (int idx : p.indices) out << ',' << idx;
        out << '\n';
    }
    return out.str();
}

std::string front_to_svg(const std::vector<FrontPoint>& front) {
    const int w = 640, h = 480;
    const int ml = 70, mr = 20, mt = 20, mb = 50;
    double cmin = 0.0, cmax = 1.0, rmin = 0.0, rmax = 1.0;
    if (!front.empty()) {
        cmin = cmax = front.front().cost;
        rmin = rmax = front.front().resilience;
    }
    for (const auto& p : front) {
        cmin = std::min(cmin, p.cost);
        cmax = std::max(cmax, p.cost);
        rmin = std::min(rmin, p.resilience);
        rmax = std::max(rmax, p.resilience);
    }
    if (cmax == cmin) cmax = cmin + 1.0;
    if (rmax == rmin) rmax = rmin + 1.0;
    auto sx = [&](double c) { return ml + (c - cmin) / (cmax - cmin) * (w - ml - mr); };
    auto sy = [&](double r) { return h - mb - (r - rmin) / (rmax - rmin) * (h - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">cost</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
        << (mt + h - mb) / 2 << ")\">resilience</text>\n";
    out << "<text x=\"" << ml << "\" y=\"" << h - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(cmin) << "</text>\n";
    out << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(cmax) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << h - mb + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(rmin) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(rmax) << "</text>\n";
    for (const auto& p : front)
        out << "<circle cx=\"" << sx(p.cost) << "\" cy=\"" << sy(p.resilience)
            << "\" r=\"3\" fill=\"steelblue\"/>\n";
    out << "</svg>\n";
    return out.str();
}

namespace {

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoFailure("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoFailure("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace

void export_front(const std::vector<FrontPoint>& front, FrontFormat format,
                  const std::string& path) {
    write_atomic(path, format == FrontFormat::Csv ? front_to_csv(front) : front_to_svg(front));
}

std::vector<FrontPoint> parse_front_csv(std::string_view text) {
    std::vector<FrontPoint> out;
    std::size_t pos = 0;
    int line_no = 0;
    long n_idx = -1;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }

        if (line_no == 1) {
            if (fields.size() < 2 || fields[0] != "cost" || fields[1] != "resilience")
                throw ParseError(ParseErrorKind::MalformedRecord, line_no,
                                 "front CSV header must start with cost,resilience");
            for (std::size_t k = 2; k < fields.size(); ++k) {
                std::string expect = "idx_" + std::to_string(k - 1);
                if (fields[k] != expect)
                    throw ParseError(ParseErrorKind::MalformedRecord, line_no,
                                     "expected header column " + expect);
            }
            n_idx = static_cast<long>(fields.size()) - 2;
            continue;
        }

        if (static_cast<long>(fields.size()) != n_idx + 2)
            throw ParseError(ParseErrorKind::MalformedRecord, line_no,
                             "row has " + std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(n_idx + 2));
        FrontPoint p;
        auto num = [&](std::string_view f, double& v) {
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size())
                throw ParseError(ParseErrorKind::MalformedRecord, line_no,
                                 "cannot parse number '" + std::string(f) + "'");
        };
        num(fields[0], p.cost);
        num(fields[1], p.resilience);
        for (long k = 0; k < n_idx; ++k) {
            std::string_view f = fields[static_cast<std::size_t>(k) + 2];
            int v = 0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || v < 0)
                throw ParseError(ParseErrorKind::MalformedRecord, line_no,
                                 "cannot parse index '" + std::string(f) + "'");
            p.indices.push_back(v);
        }
        out.push_back(std::move(p));
    }
    if (n_idx < 0)
        throw ParseError(ParseErrorKind::MalformedRecord, 1, "front CSV is empty");
    return out;
}

std::vector<FrontPoint> load_front_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_front_csv(buf.str());
}

}  // namespace aquafront
