#include "fracperc/holder.hpp"

#include <cmath>
#include <stdexcept>

namespace fracperc {

HolderFit holder_fit(const Curve& c, int grid_points, std::size_t max_samples) {
    if (c.pts.size() < 3) throw std::invalid_argument("holder: curve needs >= 3 vertices");
    if (grid_points < 3) throw std::invalid_argument("holder: needs >= 3 window sizes");

    auto vparam = c.parametrization();

    // sample set: uniform lattice plus every vertex parameter
    std::size_t lattice = std::min<std::size_t>(max_samples, 4096);
    std::vector<double> ts;
    ts.reserve(lattice + vparam.size());
    for (std::size_t i = 0; i <= lattice; ++i)
        ts.push_back(static_cast<double>(i) / static_cast<double>(lattice));
    ts.insert(ts.end(), vparam.begin(), vparam.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<Vec2> pts;
    pts.reserve(ts.size());
    for (double t : ts) pts.push_back(c.at(t, vparam));

    // log-spaced windows snapped to the lattice spacing
    double hmin = 2.0 / static_cast<double>(lattice);
    double hmax = 0.5;
    HolderFit fit;
    for (int g = 0; g < grid_points; ++g) {
        double f = static_cast<double>(g) / (grid_points - 1);
        double hraw = hmin * std::pow(hmax / hmin, f);
        double h = std::round(hraw * static_cast<double>(lattice)) / static_cast<double>(lattice);
        if (!fit.h.empty() && h <= fit.h.back()) continue;
        double best = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (std::size_t j = i + 1; j < ts.size() && ts[j] - ts[i] <= h + 1e-12; ++j)
                best = std::max(best, dist(pts[i], pts[j]));
        }
        fit.h.push_back(h);
        fit.modulus.push_back(best);
    }
    if (fit.h.size() < 3) throw std::invalid_argument("holder: degenerate window grid");

    // least squares on log M(h) = log M + alpha log h over positive moduli
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < fit.h.size(); ++i) {
        if (fit.modulus[i] <= 0) continue;
        double x = std::log(fit.h[i]), y = std::log(fit.modulus[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) throw std::invalid_argument("holder: curve is a single point");
    double denom = static_cast<double>(n) * sxx - sx * sx;
    fit.alpha_raw = (static_cast<double>(n) * sxy - sx * sy) / denom;
    double intercept = (sy - fit.alpha_raw * sx) / static_cast<double>(n);
    fit.constant = std::exp(intercept);
    fit.alpha = std::clamp(fit.alpha_raw, 1e-9, 1.0);

    for (std::size_t i = 0; i < fit.h.size(); ++i) {
        if (fit.modulus[i] <= 0) continue;
        double pred = intercept + fit.alpha_raw * std::log(fit.h[i]);
        fit.max_residual = std::max(fit.max_residual, std::abs(std::log(fit.modulus[i]) - pred));
    }
    return fit;
}

}  // namespace fracperc
