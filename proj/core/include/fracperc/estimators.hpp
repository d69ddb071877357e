#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracperc/annulus.hpp"
#include "fracperc/config.hpp"
#include "fracperc/plan.hpp"
#include "fracperc/report.hpp"

namespace fracperc {

struct ThetaPoint {
    double p = 0;
    int n = 1;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    EstimateReport report;
};

/// Left-right crossing frequency over the plan's (p, n) grid. Trials share
/// per-trial seeds across grid points, so the crossing indicators are
/// monotone in p and in n sample by sample, not just on average.
std::vector<ThetaPoint> estimate_theta(const ExperimentPlan& plan);

/// k well-separated rectangles: each one's distance to the others is at
/// least its own diameter. Long axis is x.
struct RectangleFamily {
    std::vector<Rect> rects;
    double sigma = 2.0;        // length / width
    double min_separation = 0; // certificate
    double max_diameter = 0;

    static RectangleFamily well_separated(int k, double width, double sigma);

    /// Checks geometry and refreshes the separation certificate.
    void validate();
};

struct TailCurve {
    int k = 1;
    std::vector<double> ratio;      // r / R per annulus
    std::vector<std::uint64_t> successes;
    double lambda = 0.0;            // fitted decay exponent
    bool reliable = false;
};

struct DisjointTailReport {
    double p = 0;
    int n = 1;
    std::uint64_t trials = 0;
    Vec2 center;
    double R = 0.5;
    std::vector<double> r_values;
    std::vector<std::vector<std::uint16_t>> counts;  // [r_index][trial]
    std::vector<TailCurve> curves;                   // per k
};

/// P(>= k disjoint interface crossings) against r/R, with fitted slopes
/// lambda(k). Slopes come from points with enough positive counts; a curve
/// without them is flagged unreliable.
DisjointTailReport estimate_disjoint_crossing_tail(const ProcessParams& params, int n,
                                                   std::uint64_t trials, Vec2 center, double R,
                                                   const std::vector<double>& r_values,
                                                   const std::vector<int>& ks,
                                                   const GenerateOptions& opt = {});

struct REpsilonKReport {
    double epsilon = 0.5;
    int k = 3;
    int n = 1;
    std::vector<double> samples;  // per-trial infimum over the tested grid
    std::vector<double> centers_spacing_r_grid;  // metadata: spacing then r grid
};

/// Per-trial infimum radius r over a finite grid of centers and radii such
/// that some annulus A(x; r^(1+eps), r) carries >= k disjoint interface
/// crossings; 1 when none does. Centers sit on the N^-ceil(n/2) lattice and
/// only annuli with the outer box inside the unit square are tested, so the
/// grid infimum upper-bounds the continuous one.
REpsilonKReport sample_r_epsilon_k(const ProcessParams& params, int n, std::uint64_t trials,
                                   double epsilon, int k, const GenerateOptions& opt = {});

struct H2Report {
    double p = 0;
    int n = 1;
    std::uint64_t trials = 0;
    std::vector<double> individual;  // per-rectangle crossing frequency
    double joint = 0;
    double rho_hat = 0;              // max individual frequency
    double product_bound = 0;        // rho_hat^k
    bool joint_below_product = false;
    EstimateReport joint_report;
};

/// Joint frequency of simultaneous long-direction interface crossings of a
/// well-separated family against the product bound rho^k.
H2Report h2_experiment(const ProcessParams& params, int n, std::uint64_t trials,
                       const RectangleFamily& family, const GenerateOptions& opt = {});

/// Smallest collection of level-(m) cells whose whitening makes a long
/// black crossing of `rect` impossible: a full short-direction column of
/// level-m cells through the rectangle's middle.
std::vector<CellIndex> blocking_set(const ProcessParams& params, const Rect& rect, int axis,
                                    int m);

struct PlanOutcome {
    std::vector<std::string> files;
    std::map<std::string, std::string> errors;  // estimator -> message
    nlohmann::json manifest;
};

/// Executes every requested estimator, writes one CSV per estimator plus a
/// JSON manifest into plan.output_dir. Per-estimator failures are recorded
/// and do not abort the rest. Identical plans produce byte-identical files.
PlanOutcome run_plan(const ExperimentPlan& plan);

}  // namespace fracperc
