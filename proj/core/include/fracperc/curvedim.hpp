#pragma once

#include "fracperc/config.hpp"
#include "fracperc/curve.hpp"
#include "fracperc/dimfit.hpp"
#include "fracperc/interface.hpp"

namespace fracperc {

/// Box-count fit of the polyline image over the given scales.
DimensionFit curve_box_dimension(const Curve& c, std::uint32_t N, const std::vector<int>& scales);

/// Hausdorff distance between the union of the loop images and the union of
/// the retained cells. The cell-side supremum is evaluated on the half-cell
/// lattice of the configuration grid, which carries the extrema for this
/// axis-aligned geometry.
double hausdorff_set_distance(const InterfaceSet& F, const LevelConfiguration& target);

}  // namespace fracperc
