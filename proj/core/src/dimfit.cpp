#include "fracperc/dimfit.hpp"

#include <cmath>

namespace fracperc {

namespace {

struct LineFit {
    double slope, intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    return {slope, (sy - slope * sx) / n};
}

}  // namespace

DimensionFit fit_box_dimension(const BoxCountSeries& series, int window_lo, int window_hi) {
    std::vector<double> x, y;
    double logN = std::log(static_cast<double>(series.N));
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        int m = series.scales[i];
        if (m < window_lo || m > window_hi) continue;
        if (series.counts[i] == 0)
            throw std::invalid_argument("fit: zero box count inside the window");
        x.push_back(m * logN);
        y.push_back(std::log(static_cast<double>(series.counts[i])));
    }
    if (x.size() < 3) throw std::invalid_argument("fit: needs at least 3 scales in the window");

    auto [slope, intercept] = least_squares(x, y);
    DimensionFit fit;
    fit.slope_raw = slope;
    fit.intercept = intercept;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;

    double d = static_cast<double>(series.d);
    fit.slope = std::clamp(slope, 0.0, d);
    fit.clamped = fit.slope != slope;

    for (std::size_t i = 0; i < x.size(); ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(y[i] - (slope * x[i] + intercept)));

    fit.lower = slope;
    fit.upper = slope;
    for (std::size_t i = 0; i + 3 <= x.size(); ++i) {
        std::vector<double> xs(x.begin() + i, x.begin() + i + 3);
        std::vector<double> ys(y.begin() + i, y.begin() + i + 3);
        double s = least_squares(xs, ys).slope;
        fit.lower = std::min(fit.lower, s);
        fit.upper = std::max(fit.upper, s);
    }
    return fit;
}

std::pair<int, int> default_fit_window(const BoxCountSeries& series) {
    if (series.scales.empty()) throw std::invalid_argument("fit: empty series");
    int lo = series.scales.front(), hi = series.scales.back();
    if (hi - lo + 1 >= 6) {
        lo += 2;
        hi -= 1;
    }
    return {lo, hi};
}

DimensionFit fit_box_dimension(const BoxCountSeries& series) {
    auto [lo, hi] = default_fit_window(series);
    return fit_box_dimension(series, lo, hi);
}

}  // namespace fracperc
