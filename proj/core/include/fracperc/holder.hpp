#pragma once

#include "fracperc/curve.hpp"

namespace fracperc {

/// Modulus-of-continuity table and the log-log fit through it:
/// M(h) = max |gamma(t1) - gamma(t2)| over |t1 - t2| <= h under the
/// normalized arc-length parametrization.
struct HolderFit {
    double alpha = 1.0;      // fitted exponent, clamped to (0, 1]
    double alpha_raw = 1.0;  // unclamped slope
    double constant = 0.0;   // fitted M
    std::vector<double> h;
    std::vector<double> modulus;
    double max_residual = 0.0;
};

/// Evaluates the modulus on a sample grid (vertex parameters plus a uniform
/// lattice) at the given window sizes; h values snap to the sample lattice.
HolderFit holder_fit(const Curve& c, int grid_points = 16, std::size_t max_samples = 2048);

}  // namespace fracperc
