#include "fracperc/dimension.hpp"

#include <cmath>

#include "fracperc/parallel.hpp"

namespace fracperc {

double theoretical_dimension(const ProcessParams& params) {
    params.validate();
    if (params.p == 0.0) throw std::invalid_argument("p: formula needs p > 0");
    return params.d + std::log(params.p) / std::log(static_cast<double>(params.N));
}

double hausdorff_upper_bound(const ProcessParams& params, double phi_hat) {
    params.validate();
    if (params.p == 0.0) throw std::invalid_argument("p: bound needs p > 0");
    if (!(phi_hat > 0.0 && phi_hat <= 1.0))
        throw std::invalid_argument("phi: must be in (0,1]");
    return params.d + std::log(params.p * phi_hat) / std::log(static_cast<double>(params.N));
}

BoundCheck discontinuity_bound_check(double phi_hat, double delta_hat,
                                     const ProcessParams& params) {
    if (!(delta_hat >= 1.0 && delta_hat <= params.d))
        throw std::invalid_argument("delta: must be in [1, d]");
    BoundCheck out;
    out.threshold = std::pow(static_cast<double>(params.N), -(params.d - delta_hat));
    out.margin = phi_hat - out.threshold;
    out.holds = phi_hat >= out.threshold;
    return out;
}

EstimateReport zn_statistics(const ProcessParams& params, int n, std::uint64_t trials,
                             const GenerateOptions& opt) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    if (n < 1) throw std::invalid_argument("level: must be >= 1");

    std::vector<std::uint64_t> zs(trials);
    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        zs[t] = generate_level(tp, n, opt).z();
    });

    double mean = 0;
    for (auto z : zs) mean += static_cast<double>(z);
    mean /= static_cast<double>(trials);
    double var = 0;
    for (auto z : zs) {
        double dlt = static_cast<double>(z) - mean;
        var += dlt * dlt;
    }
    var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
    double se = std::sqrt(var / static_cast<double>(trials));

    std::vector<double> roots;  // Z_n^(1/n) conditioned on survival
    for (auto z : zs)
        if (z > 0) roots.push_back(std::pow(static_cast<double>(z), 1.0 / n));
    std::sort(roots.begin(), roots.end());
    double median_root = roots.empty() ? 0.0 : roots[roots.size() / 2];

    double expected =
        std::pow(params.p * std::pow(static_cast<double>(params.N), params.d), n);

    EstimateReport rep;
    rep.name = "zn_mean";
    rep.estimate = mean;
    rep.samples = trials;
    rep.seed = params.seed;
    double z95 = z_for_level(0.95);
    rep.ci = {mean - z95 * se, mean + z95 * se, 0.95, "normal"};
    rep.metadata = {{"n", n},
                    {"expected_mean", expected},
                    {"standard_error", se},
                    {"survivors", roots.size()},
                    {"median_zn_root", median_root},
                    {"growth_rate", params.p * std::pow(static_cast<double>(params.N), params.d)}};
    return rep;
}

EstimateReport estimate_phi(const ProcessParams& params, int n, std::uint64_t trials,
                            bool generalized_center, const GenerateOptions& opt) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    if (n < 2) throw std::invalid_argument("level: phi estimation needs n >= 2");

    ShellSpec shell = generalized_center ? ShellSpec::generalized_center_level1(params)
                                         : ShellSpec::center_cell_level1(params);

    std::vector<std::uint8_t> hits(trials, 0);
    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        hits[t] = shell_crossing(generate_level(tp, n, opt), shell) ? 1 : 0;
    });

    std::uint64_t successes = 0;
    for (auto h : hits) successes += h;

    EstimateReport rep;
    rep.name = "phi";
    rep.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    rep.ci = wilson_interval(successes, trials, 0.99);
    rep.samples = trials;
    rep.seed = params.seed;
    rep.metadata = {{"n", n},
                    {"successes", successes},
                    {"shell", generalized_center ? "generalized-center" : "center-cell"},
                    {"note", "upper approximation of phi, decreasing in n"}};
    return rep;
}

EstimateReport estimate_delta(const ProcessParams& params, int n, double epsilon,
                              std::uint64_t trials, const GenerateOptions& opt) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon: must be > 0");

    std::vector<int> scales;
    for (int m = 1; m <= n; ++m) scales.push_back(m);

    std::vector<double> slopes(trials, -1.0);
    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        auto config = generate_level(tp, n, opt);
        if (config.empty()) return;
        auto labeling = label_components(config);
        auto dust = dust_partition(config, labeling, epsilon);
        if (dust.connected.empty()) return;
        auto series = box_count_series(dust.connected, scales, "connected-cells");
        slopes[t] = fit_box_dimension(series).slope;
    });

    std::vector<double> good;
    for (double s : slopes)
        if (s >= 0) good.push_back(s);
    if (good.empty()) throw std::runtime_error("delta: no realization had connected cells");

    double mean = 0;
    for (double s : good) mean += s;
    mean /= static_cast<double>(good.size());
    double var = 0;
    for (double s : good) var += (s - mean) * (s - mean);
    var = good.size() > 1 ? var / static_cast<double>(good.size() - 1) : 0.0;
    double se = std::sqrt(var / static_cast<double>(good.size()));

    EstimateReport rep;
    rep.name = "delta";
    rep.estimate = mean;
    double z95 = z_for_level(0.95);
    rep.ci = {mean - z95 * se, mean + z95 * se, 0.95, "normal"};
    rep.samples = good.size();
    rep.seed = params.seed;
    rep.metadata = {{"n", n}, {"epsilon", epsilon}, {"requested_trials", trials}};
    return rep;
}

}  // namespace fracperc
