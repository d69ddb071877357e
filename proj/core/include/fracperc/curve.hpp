#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fracperc/geometry.hpp"

namespace fracperc {

/// Open polyline with at least one vertex. The parametrization defaults to
/// normalized arc length; a custom table may be attached (t_0=0, t_last=1,
/// strictly increasing for non-degenerate curves).
struct Curve {
    std::vector<Vec2> pts;
    std::optional<std::vector<double>> param;

    std::size_t size() const { return pts.size(); }
    bool degenerate() const { return pts.size() < 2; }

    double length() const {
        double s = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) s += dist(pts[i - 1], pts[i]);
        return s;
    }

    /// Normalized arc-length parameter values per vertex. A single point
    /// gets the constant parametrization {0}; zero-length multi-vertex
    /// curves spread parameters uniformly.
    std::vector<double> parametrization() const {
        if (pts.empty()) throw std::invalid_argument("curve: empty");
        if (param) return *param;
        std::vector<double> t(pts.size(), 0.0);
        if (pts.size() == 1) return t;
        double total = length();
        if (total == 0.0) {
            for (std::size_t i = 0; i < pts.size(); ++i)
                t[i] = static_cast<double>(i) / static_cast<double>(pts.size() - 1);
            return t;
        }
        double acc = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            acc += dist(pts[i - 1], pts[i]);
            t[i] = acc / total;
        }
        t.back() = 1.0;
        return t;
    }

    /// Point at parameter u in [0,1] under the curve's parametrization.
    Vec2 at(double u, const std::vector<double>& t) const {
        if (pts.size() == 1) return pts[0];
        if (u <= t.front()) return pts.front();
        if (u >= t.back()) return pts.back();
        auto it = std::upper_bound(t.begin(), t.end(), u);
        std::size_t i = static_cast<std::size_t>(it - t.begin());
        double t0 = t[i - 1], t1 = t[i];
        double w = t1 > t0 ? (u - t0) / (t1 - t0) : 0.0;
        return pts[i - 1] + w * (pts[i] - pts[i - 1]);
    }
};

}  // namespace fracperc
