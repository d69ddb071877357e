#include "fracperc/curvedim.hpp"

#include <cmath>
#include <limits>

#include "fracperc/boxcount.hpp"

namespace fracperc {

DimensionFit curve_box_dimension(const Curve& c, std::uint32_t N, const std::vector<int>& scales) {
    if (scales.size() < 3) throw std::invalid_argument("fit: needs at least 3 scales");
    auto series = box_count_series(c, N, scales, "curve");
    return fit_box_dimension(series, series.scales.front(), series.scales.back());
}

namespace {

struct EdgeIndex {
    std::int64_t S;
    std::vector<std::vector<std::uint32_t>> buckets;  // per cell, edge ids
    std::vector<std::array<Vec2, 2>> edges;           // grid units

    explicit EdgeIndex(std::int64_t side) : S(side), buckets(static_cast<std::size_t>(side * side)) {}

    void add(Vec2 a, Vec2 b) {
        std::uint32_t id = static_cast<std::uint32_t>(edges.size());
        edges.push_back({a, b});
        std::int64_t x = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::floor(std::min(a.x, b.x))), 0, S - 1);
        std::int64_t y = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::floor(std::min(a.y, b.y))), 0, S - 1);
        buckets[static_cast<std::size_t>(y) * S + x].push_back(id);
    }

    // nearest-edge distance by expanding ring search, grid units
    double nearest(Vec2 p) const {
        if (edges.empty()) return std::numeric_limits<double>::infinity();
        std::int64_t cx = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.x)), 0,
                                                   S - 1);
        std::int64_t cy = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.y)), 0,
                                                   S - 1);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t ring = 0; ring < 2 * S; ++ring) {
            if (best < static_cast<double>(ring) - 1.0) break;
            for (std::int64_t y = cy - ring; y <= cy + ring; ++y) {
                if (y < 0 || y >= S) continue;
                for (std::int64_t x = cx - ring; x <= cx + ring; ++x) {
                    if (x < 0 || x >= S) continue;
                    if (std::max(std::llabs(x - cx), std::llabs(y - cy)) != ring) continue;
                    for (std::uint32_t id : buckets[static_cast<std::size_t>(y) * S + x]) {
                        const auto& e = edges[id];
                        best = std::min(best, point_segment_distance(p, e[0], e[1]));
                    }
                }
            }
        }
        return best;
    }
};

}  // namespace

double hausdorff_set_distance(const InterfaceSet& F, const LevelConfiguration& target) {
    if (target.params().d != 2) throw std::invalid_argument("hausdorff: d must be 2");
    if (F.loops.empty() && target.empty()) return 0.0;
    if (F.loops.empty() || target.empty())
        throw std::invalid_argument("hausdorff: one side is empty");

    const std::int64_t S = static_cast<std::int64_t>(target.side());
    const double h = 1.0 / static_cast<double>(S);

    EdgeIndex index(S);
    for (const auto& loop : F.loops) {
        const auto& v = loop.verts;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            index.add({static_cast<double>(a[0]), static_cast<double>(a[1])},
                      {static_cast<double>(b[0]), static_cast<double>(b[1])});
        }
    }

    // loops to cells: loop edges are faces of retained cells
    double sup_loops = 0;
    for (const auto& loop : F.loops) {
        for (const auto& vtx : loop.verts) {
            Vec2 p{static_cast<double>(vtx[0]), static_cast<double>(vtx[1])};
            double best = std::numeric_limits<double>::infinity();
            // closest retained cell among the four incident ones, else scan rings
            bool touching = false;
            for (int dy = 0; dy <= 1 && !touching; ++dy)
                for (int dx = 0; dx <= 1 && !touching; ++dx)
                    if (target.retained2(static_cast<std::int64_t>(p.x) + dx,
                                         static_cast<std::int64_t>(p.y) + dy))
                        touching = true;
            if (touching) continue;
            for (std::int64_t ring = 1; ring < 2 * S; ++ring) {
                std::int64_t cx = static_cast<std::int64_t>(p.x);
                std::int64_t cy = static_cast<std::int64_t>(p.y);
                bool improved = false;
                for (std::int64_t y = cy - ring; y <= cy + ring + 1; ++y)
                    for (std::int64_t x = cx - ring; x <= cx + ring + 1; ++x) {
                        if (std::max(std::llabs(x - cx), std::llabs(y - cy)) != ring) continue;
                        if (!target.retained2(x, y)) continue;
                        double dx0 = std::max({static_cast<double>(x - 1) - p.x,
                                               p.x - static_cast<double>(x), 0.0});
                        double dy0 = std::max({static_cast<double>(y - 1) - p.y,
                                               p.y - static_cast<double>(y), 0.0});
                        best = std::min(best, std::hypot(dx0, dy0));
                        improved = true;
                    }
                if (improved && best <= static_cast<double>(ring)) break;
            }
            sup_loops = std::max(sup_loops, best);
        }
    }

    // cells to loops: evaluate on the half-cell lattice of each retained cell
    double sup_cells = 0;
    std::vector<Coord> k(2);
    target.for_each_packed([&](std::uint64_t idx) {
        target.unpack(idx, k);
        double x0 = static_cast<double>(k[0]) - 1.0, y0 = static_cast<double>(k[1]) - 1.0;
        for (int iy = 0; iy <= 2; ++iy)
            for (int ix = 0; ix <= 2; ++ix) {
                Vec2 p{x0 + ix * 0.5, y0 + iy * 0.5};
                sup_cells = std::max(sup_cells, index.nearest(p));
            }
    });

    return std::max(sup_loops, sup_cells) * h;
}

}  // namespace fracperc
