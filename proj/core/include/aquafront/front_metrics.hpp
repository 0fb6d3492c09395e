#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aquafront/archive.hpp"
#include "aquafront/errors.hpp"

namespace aquafront {

struct FrontPoint {
    double cost = 0.0;
    double resilience = 0.0;
    std::vector<int> indices;
};

std::vector<FrontPoint> to_front(const std::vector<ArchiveEntry>& entries);

// Throws InputNotAFront naming the 1-based row of the offending member when
// the set contains a dominated member or a duplicate objective vector.
void validate_front(const std::vector<FrontPoint>& front);

struct ComparisonReport {
    std::uint64_t n1_total = 0;
    std::uint64_t n1_accepted = 0;
    std::uint64_t n1_rejected = 0;
    std::uint64_t n1_unique = 0;
    std::uint64_t n2_total = 0;
    std::uint64_t n2_accepted = 0;
    std::uint64_t n2_rejected = 0;
    std::uint64_t n2_unique = 0;
    std::uint64_t n_common = 0;
    std::optional<std::uint64_t> fe1;
    std::optional<std::uint64_t> fe2;
};

enum class MatchSpace { Objective, Decision };

struct CompareOptions {
    double tol = 1e-9;  // relative tolerance for objective-space matching
    MatchSpace match = MatchSpace::Objective;
};

// Cross-domination accounting between two fronts: a member is rejected when
// some member of the other front strictly dominates it; accepted members are
// common when the other accepted set holds an equal member (objective space
// within tol, or identical index vectors in decision space).
ComparisonReport compare_fronts(const std::vector<FrontPoint>& pf1,
                                const std::vector<FrontPoint>& pf2,
                                const CompareOptions& options = {});

// Exact two-objective hypervolume (cost minimized, resilience maximized)
// against a reference point every member must dominate. Dominated and
// duplicate members contribute nothing.
double hypervolume_2d(const std::vector<FrontPoint>& front,
                      const std::array<double, 2>& ref_point);

enum class FrontFormat { Csv, Svg };

// Writes atomically (temp file + rename). CSV: header
// cost,resilience,idx_1,...,idx_N and one row per member at 17 significant
// digits. SVG: labeled scatter with one marker per member.
void export_front(const std::vector<FrontPoint>& front, FrontFormat format,
                  const std::string& path);

std::string front_to_csv(const std::vector<FrontPoint>& front);
std::string front_to_svg(const std::vector<FrontPoint>& front);

// Inverse of front_to_csv; line-numbered ParseError on malformed input.
std::vector<FrontPoint> parse_front_csv(std::string_view text);
std::vector<FrontPoint> load_front_csv(const std::string& path);  // IoFailure if unreadable

}  // namespace aquafront
