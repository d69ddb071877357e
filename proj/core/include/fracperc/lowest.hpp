#pragma once

#include <optional>

#include "fracperc/config.hpp"
#include "fracperc/curve.hpp"
#include "fracperc/interface.hpp"

namespace fracperc {

/// The lowest interface segment joining the left and right sides, or
/// nullopt when no left-right crossing exists. Computed from the white
/// cells 4-connected to the bottom edge: the returned curve is the upper
/// boundary of that region, an interface segment with retained cells above.
std::optional<Curve> lowest_crossing(const LevelConfiguration& config);

/// Same curve in grid units (integer vertices), for exact comparisons.
std::optional<std::vector<std::array<std::int32_t, 2>>> lowest_crossing_vertices(
    const LevelConfiguration& config);

/// Cell mask (packed row-major, 1 = cell belongs to the closed region above
/// the lowest crossing). Empty when there is no crossing.
std::vector<std::uint8_t> region_above_lowest(const LevelConfiguration& config);

}  // namespace fracperc
