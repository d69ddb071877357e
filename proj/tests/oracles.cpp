#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <functional>

namespace oracle {

using fracperc::Coord;

namespace {

std::vector<std::vector<Coord>> all_cells(const LevelConfiguration& config) {
    std::vector<std::vector<Coord>> cells;
    config.for_each_cell([&](std::span<const Coord> k) {
        cells.emplace_back(k.begin(), k.end());
    });
    return cells;
}

bool chebyshev_adjacent(const std::vector<Coord>& a, const std::vector<Coord>& b) {
    bool same = true;
    for (std::size_t l = 0; l < a.size(); ++l) {
        long diff = std::labs(static_cast<long>(a[l]) - static_cast<long>(b[l]));
        if (diff > 1) return false;
        if (diff != 0) same = false;
    }
    return !same;
}

}  // namespace

std::map<std::uint64_t, int> flood_fill_labels(const LevelConfiguration& config) {
    auto cells = all_cells(config);
    std::map<std::uint64_t, int> label;
    std::map<std::vector<Coord>, std::size_t> pos;
    for (std::size_t i = 0; i < cells.size(); ++i) pos[cells[i]] = i;

    std::vector<int> mark(cells.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (mark[i] >= 0) continue;
        std::deque<std::size_t> queue{i};
        mark[i] = next;
        while (!queue.empty()) {
            std::size_t cur = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (mark[j] < 0 && chebyshev_adjacent(cells[cur], cells[j])) {
                    mark[j] = next;
                    queue.push_back(j);
                }
            }
        }
        ++next;
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        label[config.pack(cells[i])] = mark[i];
    return label;
}

bool left_right_bfs(const LevelConfiguration& config) {
    auto labels = flood_fill_labels(config);
    auto cells = all_cells(config);
    std::set<int> touch_left, touch_right;
    for (const auto& c : cells) {
        int lab = labels[config.pack(c)];
        if (c[0] == 1) touch_left.insert(lab);
        if (c[0] == config.side()) touch_right.insert(lab);
    }
    for (int lab : touch_left)
        if (touch_right.count(lab)) return true;
    return false;
}

bool rect_crossing_bfs(const LevelConfiguration& config, const fracperc::Rect& rect, int axis) {
    double h = 1.0 / static_cast<double>(config.side());
    auto cells = all_cells(config);
    std::vector<std::vector<Coord>> inside;
    for (const auto& c : cells) {
        double x0 = (c[0] - 1) * h, x1 = c[0] * h, y0 = (c[1] - 1) * h, y1 = c[1] * h;
        if (x0 <= rect.x1 && x1 >= rect.x0 && y0 <= rect.y1 && y1 >= rect.y0)
            inside.push_back(c);
    }
    auto touches = [&](const std::vector<Coord>& c, double plane, int ax) {
        double lo = (c[ax] - 1) * h, hi = c[ax] * h;
        return lo <= plane && hi >= plane;
    };
    double flo = axis == 1 ? rect.x0 : rect.y0;
    double fhi = axis == 1 ? rect.x1 : rect.y1;

    std::vector<int> mark(inside.size(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < inside.size(); ++i)
        if (touches(inside[i], flo, axis - 1)) {
            mark[i] = 1;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (touches(inside[cur], fhi, axis - 1)) return true;
        for (std::size_t j = 0; j < inside.size(); ++j)
            if (!mark[j] && chebyshev_adjacent(inside[cur], inside[j])) {
                mark[j] = 1;
                queue.push_back(j);
            }
    }
    return false;
}

bool shell_crossing_bfs(const LevelConfiguration& config, const fracperc::ShellSpec& shell) {
    // everything in units of 1/(2*N^n), recomputed from the spec fields
    std::int64_t scale = 1;
    for (int i = shell.level; i < config.level(); ++i) scale *= config.params().N;
    const std::uint32_t d = shell.d;

    auto cells = all_cells(config);
    auto box_lo = [](Coord c) { return 2 * (static_cast<std::int64_t>(c) - 1); };
    auto box_hi = [](Coord c) { return 2 * static_cast<std::int64_t>(c); };

    std::vector<std::vector<Coord>> in_shell;
    std::vector<char> inner_touch, outer_touch;
    for (const auto& c : cells) {
        bool meets_outer = true, strictly_in_inner = true, touches_in = true, touches_out = false;
        for (std::uint32_t l = 0; l < d; ++l) {
            std::int64_t lo = box_lo(c[l]), hi = box_hi(c[l]);
            std::int64_t il = shell.inner_lo[l] * scale, ih = shell.inner_hi[l] * scale;
            std::int64_t ol = shell.outer_lo[l] * scale, oh = shell.outer_hi[l] * scale;
            if (lo > oh || hi < ol) meets_outer = false;
            if (!(il < lo && hi < ih)) strictly_in_inner = false;
            if (lo > ih || hi < il) touches_in = false;
            if (!(ol < lo && hi < oh)) touches_out = true;
        }
        if (!meets_outer || strictly_in_inner) continue;
        in_shell.push_back(c);
        inner_touch.push_back(touches_in ? 1 : 0);
        outer_touch.push_back(touches_out ? 1 : 0);
    }

    std::vector<int> mark(in_shell.size(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < in_shell.size(); ++i)
        if (inner_touch[i]) {
            mark[i] = 1;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (outer_touch[cur]) return true;
        for (std::size_t j = 0; j < in_shell.size(); ++j)
            if (!mark[j] && chebyshev_adjacent(in_shell[cur], in_shell[j])) {
                mark[j] = 1;
                queue.push_back(j);
            }
    }
    return false;
}

std::uint64_t box_count_cells_scan(const LevelConfiguration& config, int m) {
    const std::uint32_t d = config.params().d;
    std::uint64_t mside = 1;
    for (int i = 0; i < m; ++i) mside *= config.params().N;
    std::uint64_t ratio = config.side() / mside;

    std::uint64_t total_boxes = 1;
    for (std::uint32_t l = 0; l < d; ++l) total_boxes *= mside;

    std::uint64_t count = 0;
    std::vector<Coord> box(d, 1), cell(d);
    for (std::uint64_t b = 0; b < total_boxes; ++b) {
        std::uint64_t t = b;
        for (std::uint32_t l = 0; l < d; ++l) {
            box[l] = static_cast<Coord>(t % mside) + 1;
            t /= mside;
        }
        // scan every descendant cell of this box
        std::uint64_t descendants = 1;
        for (std::uint32_t l = 0; l < d; ++l) descendants *= ratio;
        bool hit = false;
        for (std::uint64_t s = 0; s < descendants && !hit; ++s) {
            std::uint64_t u = s;
            for (std::uint32_t l = 0; l < d; ++l) {
                cell[l] = static_cast<Coord>((box[l] - 1) * ratio + u % ratio + 1);
                u /= ratio;
            }
            if (config.retained(cell)) hit = true;
        }
        if (hit) ++count;
    }
    return count;
}

std::uint64_t box_count_curve_scan(const fracperc::Curve& c, std::uint32_t N, int m) {
    std::int64_t G = 1;
    for (int i = 0; i < m; ++i) G *= N;
    double g = static_cast<double>(G);

    // does any point of the closed segment [a,b] fall in the half-open box?
    auto segment_meets_box = [&](fracperc::Vec2 a, fracperc::Vec2 b, std::int64_t bx,
                                 std::int64_t by) {
        double x0 = bx / g, x1 = (bx + 1) / g, y0 = by / g, y1 = (by + 1) / g;
        bool top_x = bx == G - 1, top_y = by == G - 1;
        // walk a fine parameter grid plus exact boundary crossings
        std::vector<double> ts{0.0, 1.0};
        for (double v : {x0, x1})
            if (b.x != a.x) ts.push_back((v - a.x) / (b.x - a.x));
        for (double v : {y0, y1})
            if (b.y != a.y) ts.push_back((v - a.y) / (b.y - a.y));
        std::vector<double> probe;
        for (double t : ts)
            if (t >= 0 && t <= 1) probe.push_back(t);
        std::sort(probe.begin(), probe.end());
        std::vector<double> mids = probe;
        for (std::size_t i = 1; i < probe.size(); ++i)
            mids.push_back(0.5 * (probe[i - 1] + probe[i]));
        for (double t : mids) {
            fracperc::Vec2 p = a + t * (b - a);
            bool in_x = top_x ? (p.x >= x0 && p.x <= 1.0) : (p.x >= x0 && p.x < x1);
            bool in_y = top_y ? (p.y >= y0 && p.y <= 1.0) : (p.y >= y0 && p.y < y1);
            if (in_x && in_y) return true;
        }
        return false;
    };

    std::uint64_t count = 0;
    for (std::int64_t by = 0; by < G; ++by)
        for (std::int64_t bx = 0; bx < G; ++bx) {
            bool hit = false;
            if (c.pts.size() == 1) {
                hit = segment_meets_box(c.pts[0], c.pts[0], bx, by);
            } else {
                for (std::size_t i = 1; i < c.pts.size() && !hit; ++i)
                    hit = segment_meets_box(c.pts[i - 1], c.pts[i], bx, by);
            }
            if (hit) ++count;
        }
    return count;
}

double discrete_frechet_recursive(const fracperc::Curve& a, const fracperc::Curve& b) {
    const auto& p = a.pts;
    const auto& q = b.pts;
    std::vector<std::vector<double>> memo(p.size(), std::vector<double>(q.size(), -1.0));
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                              std::size_t j) -> double {
        double& slot = memo[i][j];
        if (slot >= 0) return slot;
        double d = fracperc::dist(p[i], q[j]);
        if (i == 0 && j == 0)
            slot = d;
        else if (i == 0)
            slot = std::max(rec(0, j - 1), d);
        else if (j == 0)
            slot = std::max(rec(i - 1, 0), d);
        else
            slot = std::max(std::min({rec(i - 1, j), rec(i - 1, j - 1), rec(i, j - 1)}), d);
        return slot;
    };
    return rec(p.size() - 1, q.size() - 1);
}

int annulus_crossings_sampled(const fracperc::InterfaceSet& F, const fracperc::AnnulusSpec& a,
                              int samples_per_edge) {
    double h = 1.0 / static_cast<double>(F.side);
    int total = 0;
    for (const auto& loop : F.loops) {
        std::vector<int> events;  // 0 inner, 1 outer
        const auto& v = loop.verts;
        for (std::size_t i = 0; i < v.size(); ++i) {
            fracperc::Vec2 p0{v[i][0] * h, v[i][1] * h};
            fracperc::Vec2 p1{v[(i + 1) % v.size()][0] * h, v[(i + 1) % v.size()][1] * h};
            for (int s = 0; s < samples_per_edge; ++s) {
                double t = static_cast<double>(s) / samples_per_edge;
                fracperc::Vec2 p = p0 + t * (p1 - p0);
                double m = a.linf2(p);
                if (m <= a.r)
                    events.push_back(0);
                else if (m >= a.R)
                    events.push_back(1);
            }
        }
        if (events.empty()) continue;
        std::vector<int> dedup;
        for (int e : events)
            if (dedup.empty() || dedup.back() != e) dedup.push_back(e);
        while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
        if (dedup.size() < 2) continue;
        for (std::size_t i = 0; i < dedup.size(); ++i)
            if (dedup[i] != dedup[(i + 1) % dedup.size()]) ++total;
    }
    return total;
}

int black_crossings_ford_fulkerson(const LevelConfiguration& config,
                                   const fracperc::AnnulusSpec& a) {
    const std::int64_t S = static_cast<std::int64_t>(config.side());
    const double h = 1.0 / static_cast<double>(S);
    const double cx = a.center.x, cy = a.center.y;

    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    std::map<std::pair<std::int64_t, std::int64_t>, int> id;
    for (std::int64_t y = 1; y <= S; ++y)
        for (std::int64_t x = 1; x <= S; ++x) {
            if (!config.retained2(x, y)) continue;
            double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
            bool meets_outer = lox <= cx + a.R / 2 && hix >= cx - a.R / 2 &&
                               loy <= cy + a.R / 2 && hiy >= cy - a.R / 2;
            bool in_inner_open = cx - a.r / 2 < lox && hix < cx + a.r / 2 &&
                                 cy - a.r / 2 < loy && hiy < cy + a.r / 2;
            if (!meets_outer || in_inner_open) continue;
            id[{x, y}] = static_cast<int>(cells.size());
            cells.emplace_back(x, y);
        }
    int n = static_cast<int>(cells.size());
    if (n == 0) return 0;

    // adjacency-matrix residual graph on split nodes
    int V = 2 * n + 2, src = 2 * n, dst = 2 * n + 1;
    std::vector<std::vector<int>> cap(V, std::vector<int>(V, 0));
    for (int i = 0; i < n; ++i) {
        auto [x, y] = cells[static_cast<std::size_t>(i)];
        cap[2 * i][2 * i + 1] = 1;
        double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
        bool touch_in = lox <= cx + a.r / 2 && hix >= cx - a.r / 2 && loy <= cy + a.r / 2 &&
                        hiy >= cy - a.r / 2;
        bool strictly_in_outer = cx - a.R / 2 < lox && hix < cx + a.R / 2 &&
                                 cy - a.R / 2 < loy && hiy < cy + a.R / 2;
        if (touch_in) cap[src][2 * i] = 1;
        if (!strictly_in_outer) cap[2 * i + 1][dst] = 1;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (!dx && !dy) continue;
                auto it = id.find({x + dx, y + dy});
                if (it != id.end()) cap[2 * i + 1][2 * it->second] = 1;
            }
    }

    int flow = 0;
    while (true) {
        std::vector<int> parent(V, -1);
        parent[src] = src;
        std::deque<int> queue{src};
        while (!queue.empty() && parent[dst] < 0) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < V; ++v)
                if (cap[u][v] > 0 && parent[v] < 0) {
                    parent[v] = u;
                    queue.push_back(v);
                }
        }
        if (parent[dst] < 0) break;
        for (int v = dst; v != src; v = parent[v]) {
            cap[parent[v]][v] -= 1;
            cap[v][parent[v]] += 1;
        }
        ++flow;
    }
    return flow;
}

std::vector<std::uint8_t> sea_mask(const LevelConfiguration& config) {
    const std::int64_t S = static_cast<std::int64_t>(config.side());
    std::vector<std::uint8_t> sea(static_cast<std::size_t>(S) * S, 0);
    std::deque<std::pair<std::int64_t, std::int64_t>> queue;
    for (std::int64_t x = 1; x <= S; ++x)
        if (!config.retained2(x, 1)) {
            sea[static_cast<std::size_t>(0) * S + (x - 1)] = 1;
            queue.emplace_back(x, 1);
        }
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        const std::int64_t nxs[4] = {x + 1, x - 1, x, x};
        const std::int64_t nys[4] = {y, y, y + 1, y - 1};
        for (int k = 0; k < 4; ++k) {
            std::int64_t nx = nxs[k], ny = nys[k];
            if (nx < 1 || ny < 1 || nx > S || ny > S) continue;
            auto& cell = sea[static_cast<std::size_t>(ny - 1) * S + (nx - 1)];
            if (cell || config.retained2(nx, ny)) continue;
            cell = 1;
            queue.emplace_back(nx, ny);
        }
    }
    return sea;
}

std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> sea_wall_edges(
    const LevelConfiguration& config) {
    const std::int64_t S = static_cast<std::int64_t>(config.side());
    auto sea = sea_mask(config);
    auto is_sea = [&](std::int64_t x, std::int64_t y) {
        if (x < 1 || x > S || y < 1 || y > S) return false;
        return sea[static_cast<std::size_t>(y - 1) * S + (x - 1)] != 0;
    };
    auto solid = [&](std::int64_t x, std::int64_t y) {
        if (x < 1 || x > S || y < 1 || y > S) return false;
        return !is_sea(x, y);
    };

    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> walls;
    auto add = [&](int x0, int y0, int x1, int y1) {
        walls.insert({{x0, y0}, {x1, y1}});
    };
    // horizontal edges: wall when solid above and sea-or-bottom-exterior below
    for (std::int64_t y = 0; y <= S; ++y)
        for (std::int64_t x = 0; x < S; ++x) {
            bool above = solid(x + 1, y + 1);
            bool below_sea = y == 0 ? true : is_sea(x + 1, y);
            if (above && below_sea) add(static_cast<int>(x), static_cast<int>(y),
                                        static_cast<int>(x + 1), static_cast<int>(y));
        }
    // vertical edges: wall when one side solid, other side sea (or side
    // exterior on the domain boundary)
    for (std::int64_t y = 0; y < S; ++y)
        for (std::int64_t x = 0; x <= S; ++x) {
            bool west = x == 0 ? false : solid(x, y + 1);
            bool east = x == S ? false : solid(x + 1, y + 1);
            bool west_sea = x == 0 ? true : is_sea(x, y + 1);
            bool east_sea = x == S ? true : is_sea(x + 1, y + 1);
            if ((west && east_sea) || (east && west_sea))
                add(static_cast<int>(x), static_cast<int>(y), static_cast<int>(x),
                    static_cast<int>(y + 1));
        }
    return walls;
}

double theta_level1_exact(double p) {
    double total = 0;
    for (int mask = 0; mask < 16; ++mask) {
        // cells: bit 0 = (1,1), 1 = (2,1), 2 = (1,2), 3 = (2,2)
        bool left = (mask & 1) || (mask & 4);
        bool right = (mask & 2) || (mask & 8);
        if (!(left && right)) continue;  // any left and right cell touch at N=2
        double prob = 1;
        for (int b = 0; b < 4; ++b) prob *= (mask >> b) & 1 ? p : 1 - p;
        total += prob;
    }
    return total;
}

double phi_level1_exact(std::uint32_t N, double p) {
    // shell cells at level 1: everything except the strict interior of the
    // 3x3 block around the centre cell, i.e. all but the centre cell
    const int c = static_cast<int>((N + 1) / 2);
    std::vector<std::pair<int, int>> cells;
    for (int y = 1; y <= static_cast<int>(N); ++y)
        for (int x = 1; x <= static_cast<int>(N); ++x)
            if (!(x == c && y == c)) cells.emplace_back(x, y);
    const int M = static_cast<int>(cells.size());
    if (M > 24) throw std::invalid_argument("phi oracle: N too large for enumeration");

    auto touches_inner = [&](int x, int y) {
        return std::abs(x - c) <= 2 && std::abs(y - c) <= 2;
    };
    auto touches_outer = [&](int x, int y) {
        return x == 1 || y == 1 || x == static_cast<int>(N) || y == static_cast<int>(N);
    };

    // per-cell Chebyshev neighbour masks for bit-parallel flooding
    std::vector<std::uint64_t> nbr(M, 0);
    std::uint64_t inner_mask = 0, outer_mask = 0;
    for (int i = 0; i < M; ++i) {
        if (touches_inner(cells[i].first, cells[i].second)) inner_mask |= std::uint64_t{1} << i;
        if (touches_outer(cells[i].first, cells[i].second)) outer_mask |= std::uint64_t{1} << i;
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            if (std::abs(cells[i].first - cells[j].first) <= 1 &&
                std::abs(cells[i].second - cells[j].second) <= 1)
                nbr[i] |= std::uint64_t{1} << j;
        }
    }

    // probability weights by popcount
    std::vector<double> weight(M + 1);
    for (int k = 0; k <= M; ++k)
        weight[k] = std::pow(p, k) * std::pow(1 - p, M - k);

    double total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << M); ++mask) {
        std::uint64_t seen = inner_mask & mask;
        if (!(seen)) continue;
        while (true) {
            if (seen & outer_mask) break;
            std::uint64_t grow = 0;
            std::uint64_t f = seen;
            while (f) {
                int i = std::countr_zero(f);
                f &= f - 1;
                grow |= nbr[i];
            }
            grow &= mask;
            grow &= ~seen;
            if (!grow) break;
            seen |= grow;
        }
        if (seen & outer_mask) total += weight[std::popcount(mask)];
    }
    return total;
}

}  // namespace oracle
