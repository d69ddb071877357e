#include "fracperc/boxcount.hpp"

#include <cmath>
#include <unordered_set>

namespace fracperc {

std::uint64_t box_count(const CellSet& cells, int m) {
    if (m < 1) throw std::invalid_argument("scale: m must be >= 1");
    if (cells.empty()) return 0;
    if (m >= cells.level) {
        std::uint64_t mult = 1;
        for (int i = cells.level; i < m; ++i)
            for (std::uint32_t l = 0; l < cells.d; ++l) mult *= cells.N;
        return cells.size() * mult;
    }
    std::uint64_t ratio = 1;
    for (int i = m; i < cells.level; ++i) ratio *= cells.N;
    std::uint64_t aside = cells.side / ratio;

    std::vector<std::uint64_t> ancestors;
    ancestors.reserve(cells.size());
    for (std::uint64_t idx : cells.packed) {
        std::uint64_t out = 0, stride = 1, t = idx;
        for (std::uint32_t l = 0; l < cells.d; ++l) {
            out += (t % cells.side) / ratio * stride;
            t /= cells.side;
            stride *= aside;
        }
        ancestors.push_back(out);
    }
    std::sort(ancestors.begin(), ancestors.end());
    ancestors.erase(std::unique(ancestors.begin(), ancestors.end()), ancestors.end());
    return ancestors.size();
}

std::uint64_t box_count(const LevelConfiguration& config, int m) {
    return box_count(CellSet::from_config(config), m);
}

namespace {

// half-open box index of a coordinate in [0,1], clamped at the top edge
std::int64_t box_of(double x, std::int64_t boxes) {
    auto b = static_cast<std::int64_t>(std::floor(x * static_cast<double>(boxes)));
    return std::clamp<std::int64_t>(b, 0, boxes - 1);
}

}  // namespace

std::uint64_t box_count(const Curve& curve, std::uint32_t N, int m) {
    if (m < 1) throw std::invalid_argument("scale: m must be >= 1");
    if (curve.pts.empty()) return 0;
    std::int64_t boxes = 1;
    for (int i = 0; i < m; ++i) boxes *= N;
    double g = static_cast<double>(boxes);

    std::unordered_set<std::uint64_t> seen;
    auto add_point = [&](Vec2 p) {
        std::uint64_t bx = static_cast<std::uint64_t>(box_of(p.x, boxes));
        std::uint64_t by = static_cast<std::uint64_t>(box_of(p.y, boxes));
        seen.insert(by * static_cast<std::uint64_t>(boxes) + bx);
    };

    add_point(curve.pts.front());
    for (std::size_t i = 1; i < curve.pts.size(); ++i) {
        Vec2 a = curve.pts[i - 1], b = curve.pts[i];
        add_point(b);
        // cut the segment at every grid line it crosses, attribute by midpoints
        std::vector<double> cuts{0.0, 1.0};
        for (int axis = 0; axis < 2; ++axis) {
            double a0 = axis == 0 ? a.x : a.y;
            double b0 = axis == 0 ? b.x : b.y;
            if (a0 == b0) continue;
            double lo = std::min(a0, b0), hi = std::max(a0, b0);
            for (std::int64_t line = static_cast<std::int64_t>(std::ceil(lo * g));
                 line <= static_cast<std::int64_t>(std::floor(hi * g)); ++line) {
                double t = (line / g - a0) / (b0 - a0);
                if (t > 0.0 && t < 1.0) cuts.push_back(t);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 1; c < cuts.size(); ++c) {
            double tm = 0.5 * (cuts[c - 1] + cuts[c]);
            add_point(a + tm * (b - a));
        }
    }
    return seen.size();
}

BoxCountSeries box_count_series(const CellSet& cells, const std::vector<int>& scales,
                                std::string target) {
    BoxCountSeries s;
    s.target = std::move(target);
    s.N = cells.N;
    s.d = cells.d;
    for (int m : scales) {
        s.scales.push_back(m);
        s.counts.push_back(box_count(cells, m));
    }
    return s;
}

BoxCountSeries box_count_series(const LevelConfiguration& config, const std::vector<int>& scales) {
    return box_count_series(CellSet::from_config(config), scales, "configuration");
}

BoxCountSeries box_count_series(const Curve& curve, std::uint32_t N, const std::vector<int>& scales,
                                std::string target) {
    BoxCountSeries s;
    s.target = std::move(target);
    s.N = N;
    s.d = 2;
    for (int m : scales) {
        s.scales.push_back(m);
        s.counts.push_back(box_count(curve, N, m));
    }
    return s;
}

}  // namespace fracperc
