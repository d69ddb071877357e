#pragma once

#include <cstdint>
#include <vector>

#include "fracperc/config.hpp"
#include "fracperc/geometry.hpp"

namespace fracperc {

/// True iff a component of retained cells touches both faces x_1=0 and x_1=1.
bool left_right_crossing(const LevelConfiguration& config);

/// d=2. True iff cells whose boxes intersect `rect` contain a Chebyshev
/// chain joining the two faces of `rect` orthogonal to `axis` (1 or 2).
bool rectangle_crossing(const LevelConfiguration& config, const Rect& rect, int axis);

/// Concentric shell around a cell: inner box side 3*N^-level, outer box side
/// N^-(level-1). Stored as integer corner coordinates in units of
/// 1/(2*N^level), which keeps every box exact for even and odd N alike.
/// Requires N >= 4 so that the inner box fits inside the outer one.
struct ShellSpec {
    int level = 1;
    std::uint32_t N = 5;
    std::uint32_t d = 2;
    std::vector<std::int64_t> inner_lo, inner_hi;  // unclipped, half-cell units
    std::vector<std::int64_t> outer_lo, outer_hi;
    bool generalized = false;  // cube-center variant, not the cell-centred one

    static ShellSpec around_cell(const ProcessParams& params, const CellIndex& cell);

    /// The level-1 shell around the centre cell: outer box = [0,1]^d.
    /// Requires N >= 5 odd (there is no centre cell otherwise).
    static ShellSpec center_cell_level1(const ProcessParams& params);

    /// Shell concentric with the cube centre, defined for any N >= 4;
    /// a non-standard stand-in used only behind an explicit opt-in.
    static ShellSpec generalized_center_level1(const ProcessParams& params);
};

/// True iff retained cells meeting the (clipped) shell connect the inner-box
/// boundary to the outer-box boundary. Requires shell.level <= config.level.
bool shell_crossing(const LevelConfiguration& config, const ShellSpec& shell);

/// Consecutive shells of a nested cell chain never overlap: the child's
/// outer box sits strictly inside the parent's inner box.
bool shells_disjoint(const ProcessParams& params, const CellIndex& child_cell);

}  // namespace fracperc
