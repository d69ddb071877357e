#pragma once

#include "fracperc/components.hpp"
#include "fracperc/config.hpp"
#include "fracperc/crossing.hpp"
#include "fracperc/dimfit.hpp"
#include "fracperc/report.hpp"

namespace fracperc {

/// d + log p / log N; applies on non-extinction and may be negative for
/// small p (callers flag that case when reporting).
double theoretical_dimension(const ProcessParams& params);

/// d + log(p * phi_hat) / log N, the cover-chain upper bound for the
/// large-component set.
double hausdorff_upper_bound(const ProcessParams& params, double phi_hat);

struct BoundCheck {
    bool holds = false;
    double threshold = 0.0;  // N^-(d - delta_hat)
    double margin = 0.0;     // phi_hat - threshold
};

/// Diagnostic for phi >= N^-(d-Delta): both sides are estimates, so the
/// result is a report rather than an assertion.
BoundCheck discontinuity_bound_check(double phi_hat, double delta_hat,
                                     const ProcessParams& params);

/// Monte Carlo law of Z_n: mean against (p N^d)^n and the distribution of
/// Z_n^(1/n) conditioned on survival.
EstimateReport zn_statistics(const ProcessParams& params, int n, std::uint64_t trials,
                             const GenerateOptions& opt = {});

/// Frequency of the level-1 centre-cell shell crossing at resolution n;
/// an upper approximation of phi decreasing in n. Requires N >= 5 odd and
/// n >= 2 unless the generalized-centre shell is explicitly requested.
EstimateReport estimate_phi(const ProcessParams& params, int n, std::uint64_t trials,
                            bool generalized_center = false, const GenerateOptions& opt = {});

/// Mean fitted box dimension of the connected cells at diameter threshold
/// epsilon, over non-empty realizations.
EstimateReport estimate_delta(const ProcessParams& params, int n, double epsilon,
                              std::uint64_t trials, const GenerateOptions& opt = {});

}  // namespace fracperc
