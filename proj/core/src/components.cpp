#include "fracperc/components.hpp"

#include <cmath>
#include <numeric>

namespace fracperc {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

// Max distance between two closed unit cells at integer coords a, b is
// sqrt(sum (|a_l-b_l|+1)^2) in cell units; convex in a-b, so the maximum
// over a component sits on convex-hull vertex pairs.
double pair_distance_sq(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    double s = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        double t = static_cast<double>(std::llabs(a[l] - b[l]) + 1);
        s += t * t;
    }
    return s;
}

// Andrew monotone chain over integer 2D points; returns hull vertices.
std::vector<std::array<std::int64_t, 2>> convex_hull(std::vector<std::array<std::int64_t, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross3 = [](const std::array<std::int64_t, 2>& o, const std::array<std::int64_t, 2>& a,
                     const std::array<std::int64_t, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<std::int64_t, 2>> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double component_diameter_2d(const std::vector<std::array<std::int64_t, 2>>& cells, double h) {
    auto hull = convex_hull(cells);
    double best = 0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i; j < hull.size(); ++j) {
            std::int64_t a[2] = {hull[i][0], hull[i][1]};
            std::int64_t b[2] = {hull[j][0], hull[j][1]};
            best = std::max(best, pair_distance_sq(std::span<const std::int64_t>(a, 2),
                                                   std::span<const std::int64_t>(b, 2)));
        }
    return std::sqrt(best) * h;
}

}  // namespace

ComponentLabeling label_components(const LevelConfiguration& config) {
    ComponentLabeling out;
    out.level_ = config.level();
    out.side_ = config.side();
    out.d_ = config.params().d;

    auto& cells = out.cells_;
    cells.reserve(config.z());
    config.for_each_packed([&](std::uint64_t idx) { cells.push_back(idx); });

    const std::uint32_t d = out.d_;
    const std::uint64_t side = out.side_;
    UnionFind uf(cells.size());

    // canonical half of the 3^d-1 Chebyshev offsets: first nonzero entry -1
    std::vector<std::vector<int>> offsets;
    std::vector<int> off(d, -1);
    while (true) {
        bool nonzero = false, canonical = false;
        for (std::uint32_t l = 0; l < d; ++l) {
            if (off[l] != 0 && !nonzero) {
                nonzero = true;
                canonical = off[l] < 0;
            }
        }
        if (nonzero && canonical) offsets.push_back(off);
        std::uint32_t l = 0;
        while (l < d && ++off[l] == 2) off[l++] = -1;
        if (l == d) break;
    }

    std::vector<std::uint64_t> strides(d);
    strides[0] = 1;
    for (std::uint32_t l = 1; l < d; ++l) strides[l] = strides[l - 1] * side;

    std::vector<Coord> k(d);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::uint64_t idx = cells[i];
        for (std::uint32_t l = 0; l < d; ++l) {
            k[l] = static_cast<Coord>(idx % side) + 1;
            idx /= side;
        }
        for (const auto& o : offsets) {
            std::uint64_t nidx = 0;
            bool valid = true;
            for (std::uint32_t l = 0; l < d; ++l) {
                std::int64_t c = static_cast<std::int64_t>(k[l]) + o[l];
                if (c < 1 || c > static_cast<std::int64_t>(side)) {
                    valid = false;
                    break;
                }
                nidx += static_cast<std::uint64_t>(c - 1) * strides[l];
            }
            if (!valid) continue;
            auto it = std::lower_bound(cells.begin(), cells.end(), nidx);
            if (it != cells.end() && *it == nidx)
                uf.unite(static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(it - cells.begin()));
        }
    }

    // compact root ids in first-appearance order
    out.labels_.assign(cells.size(), 0);
    std::vector<std::int64_t> root_to_id(cells.size(), -1);
    std::uint32_t next_id = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
        if (root_to_id[r] < 0) root_to_id[r] = next_id++;
        out.labels_[i] = static_cast<std::uint32_t>(root_to_id[r]);
    }

    double h = 1.0 / static_cast<double>(side);
    out.components_.resize(next_id);
    std::vector<std::vector<std::array<std::int64_t, 2>>> pts2d;
    std::vector<std::vector<std::vector<std::int64_t>>> ptsnd;
    if (d == 2)
        pts2d.resize(next_id);
    else
        ptsnd.resize(next_id);

    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::uint64_t idx = cells[i];
        std::uint32_t id = out.labels_[i];
        ComponentInfo& info = out.components_[id];
        if (info.cells == 0) {
            info.id = id;
            info.bbox_lo.assign(d, static_cast<Coord>(side));
            info.bbox_hi.assign(d, 0);
        }
        ++info.cells;
        std::vector<std::int64_t> coords(d);
        for (std::uint32_t l = 0; l < d; ++l) {
            Coord c = static_cast<Coord>(idx % side) + 1;
            idx /= side;
            coords[l] = c;
            info.bbox_lo[l] = std::min(info.bbox_lo[l], c);
            info.bbox_hi[l] = std::max(info.bbox_hi[l], c);
        }
        if (d == 2)
            pts2d[id].push_back({coords[0], coords[1]});
        else
            ptsnd[id].push_back(std::move(coords));
    }

    for (std::uint32_t id = 0; id < next_id; ++id) {
        ComponentInfo& info = out.components_[id];
        if (d == 2) {
            info.diameter = component_diameter_2d(pts2d[id], h);
        } else {
            // exact pairwise max over the component (boundary cells suffice,
            // but desk-scale d>=3 components stay small)
            const auto& pts = ptsnd[id];
            double best = 0;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i; j < pts.size(); ++j)
                    best = std::max(best, pair_distance_sq(pts[i], pts[j]));
            info.diameter = std::sqrt(best) * h;
        }
    }
    return out;
}

DustPartition dust_partition(const LevelConfiguration& config, const ComponentLabeling& labeling,
                             double epsilon) {
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon: must be > 0");
    DustPartition out;
    out.component_connected.resize(labeling.component_count());
    for (std::size_t i = 0; i < labeling.component_count(); ++i)
        out.component_connected[i] = labeling.components()[i].diameter >= epsilon;

    auto init = [&](CellSet& s) {
        s.N = config.params().N;
        s.d = config.params().d;
        s.level = config.level();
        s.side = config.side();
    };
    init(out.connected);
    init(out.dust_candidates);
    const auto& cells = labeling.sorted_cells();
    const auto& labels = labeling.labels();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (out.component_connected[labels[i]])
            out.connected.packed.push_back(cells[i]);
        else
            out.dust_candidates.packed.push_back(cells[i]);
    }
    return out;
}

}  // namespace fracperc
