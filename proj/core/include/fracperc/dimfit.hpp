#pragma once

#include "fracperc/boxcount.hpp"

namespace fracperc {

struct DimensionFit {
    double slope = 0.0;      // estimated dimension, clamped to [0, d]
    double slope_raw = 0.0;  // unclamped least-squares slope
    double intercept = 0.0;
    int window_lo = 0;
    int window_hi = 0;
    double lower = 0.0;  // min slope over length-3 sliding sub-windows
    double upper = 0.0;  // max slope over length-3 sliding sub-windows
    double max_residual = 0.0;
    bool clamped = false;
};

/// Least-squares slope of log M against m log N over the window.
/// Requires at least 3 scales and strictly positive counts in the window.
DimensionFit fit_box_dimension(const BoxCountSeries& series, int window_lo, int window_hi);

/// Drop the two coarsest and the one finest scale (boundary and transient
/// effects dominate the extremes); falls back to the full range when the
/// series is too short to trim.
std::pair<int, int> default_fit_window(const BoxCountSeries& series);

DimensionFit fit_box_dimension(const BoxCountSeries& series);

}  // namespace fracperc
