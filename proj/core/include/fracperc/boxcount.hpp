#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracperc/cellset.hpp"
#include "fracperc/config.hpp"
#include "fracperc/curve.hpp"

namespace fracperc {

/// Counts of level-m grid boxes meeting a target, one entry per scale.
struct BoxCountSeries {
    std::string target;
    std::uint32_t N = 2;
    std::uint32_t d = 2;
    std::vector<int> scales;            // m, box side N^-m
    std::vector<std::uint64_t> counts;  // M_{N^-m}
};

/// Number of level-m boxes needed to cover a cell set. For m <= level this
/// is the number of distinct level-m ancestors; for m > level each retained
/// cell contributes N^(d(m-level)) boxes.
std::uint64_t box_count(const CellSet& cells, int m);
std::uint64_t box_count(const LevelConfiguration& config, int m);

/// Number of level-m boxes touched by the polyline image. Points are
/// attributed half-open per axis (a point on an interior box boundary
/// belongs to the upper box; the domain edge at 1 clamps down).
std::uint64_t box_count(const Curve& curve, std::uint32_t N, int m);

BoxCountSeries box_count_series(const CellSet& cells, const std::vector<int>& scales,
                                std::string target = "cells");
BoxCountSeries box_count_series(const LevelConfiguration& config, const std::vector<int>& scales);
BoxCountSeries box_count_series(const Curve& curve, std::uint32_t N,
                                const std::vector<int>& scales, std::string target = "curve");

}  // namespace fracperc
