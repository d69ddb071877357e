#pragma once

// Brute-force reference implementations, independent of the library code
// paths they check. Everything here favours obviousness over speed.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fracperc/annulus.hpp"
#include "fracperc/config.hpp"
#include "fracperc/crossing.hpp"
#include "fracperc/curve.hpp"
#include "fracperc/interface.hpp"

namespace oracle {

using fracperc::LevelConfiguration;

// Chebyshev flood-fill labels keyed by packed cell index.
std::map<std::uint64_t, int> flood_fill_labels(const LevelConfiguration& config);

bool left_right_bfs(const LevelConfiguration& config);

bool rect_crossing_bfs(const LevelConfiguration& config, const fracperc::Rect& rect, int axis);

bool shell_crossing_bfs(const LevelConfiguration& config, const fracperc::ShellSpec& shell);

// Exhaustive scan over all level-m boxes; a box counts when any of its
// level-n descendant cells belongs to the set.
std::uint64_t box_count_cells_scan(const LevelConfiguration& config, int m);

// Exhaustive scan for polylines: closed segment against half-open box.
std::uint64_t box_count_curve_scan(const fracperc::Curve& c, std::uint32_t N, int m);

// Top-down memoized discrete Frechet over all monotone couplings.
double discrete_frechet_recursive(const fracperc::Curve& a, const fracperc::Curve& b);

// Dense-sampling annulus crossing count (valid when boundaries are not
// tangent to the sampled loop, which the tests arrange).
int annulus_crossings_sampled(const fracperc::InterfaceSet& F, const fracperc::AnnulusSpec& a,
                              int samples_per_edge = 32);

// Ford-Fulkerson max vertex-disjoint paths, written independently of the
// library's Dinic.
int black_crossings_ford_fulkerson(const LevelConfiguration& config,
                                   const fracperc::AnnulusSpec& a);

// White cells 4-connected to the bottom edge.
std::vector<std::uint8_t> sea_mask(const LevelConfiguration& config);

// Wall edges of the sea region: a=(x,y) -> b, carrying sea on one side and
// solid (or the exterior below) on the other. Grid units.
std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> sea_wall_edges(
    const LevelConfiguration& config);

// Exact P(left-right crossing) at N=2, d=2, n=1 by 16-configuration
// enumeration.
double theta_level1_exact(double p);

// Exact shell-crossing probability for the level-1 centre-cell shell of an
// N x N grid at resolution n=1, by full enumeration over the shell cells.
double phi_level1_exact(std::uint32_t N, double p);

}  // namespace oracle
