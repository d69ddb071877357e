#include "fracperc/annulus.hpp"

#include <cmath>
#include <queue>

namespace fracperc {

namespace {

enum class Touch { Inner, Outer };

// Sample parameters along [a,b] where the l-infinity contour can cross the
// inner or outer boundary, in increasing order, always including t=0.
void boundary_cuts(Vec2 a, Vec2 b, const AnnulusSpec& an, std::vector<double>& ts) {
    ts.clear();
    ts.push_back(0.0);
    auto add_axis = [&](double a0, double b0, double c0) {
        if (a0 == b0) return;
        for (double side : {an.r, an.R}) {
            for (double sign : {-1.0, 1.0}) {
                double target = c0 + sign * side / 2.0;
                double t = (target - a0) / (b0 - a0);
                if (t > 0.0 && t < 1.0) ts.push_back(t);
            }
        }
    };
    add_axis(a.x, b.x, an.center.x);
    add_axis(a.y, b.y, an.center.y);
    std::sort(ts.begin(), ts.end());
}

// Cyclic alternation count: number of adjacent (Inner,Outer) switches.
int alternations(const std::vector<Touch>& events) {
    if (events.size() < 2) return 0;
    std::vector<Touch> dedup;
    for (Touch e : events)
        if (dedup.empty() || dedup.back() != e) dedup.push_back(e);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    if (dedup.size() < 2) return 0;
    int count = 0;
    for (std::size_t i = 0; i < dedup.size(); ++i)
        if (dedup[i] != dedup[(i + 1) % dedup.size()]) ++count;
    return count;
}

}  // namespace

int annulus_interface_crossings(const InterfaceSet& F, const AnnulusSpec& a) {
    a.validate();
    double h = 1.0 / static_cast<double>(F.side);
    int total = 0;
    std::vector<double> ts;
    std::vector<Touch> events;
    for (const auto& loop : F.loops) {
        events.clear();
        const auto& v = loop.verts;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 p0{v[i][0] * h, v[i][1] * h};
            Vec2 p1{v[(i + 1) % n][0] * h, v[(i + 1) % n][1] * h};
            boundary_cuts(p0, p1, a, ts);
            for (double t : ts) {
                Vec2 p = p0 + t * (p1 - p0);
                double m = a.linf2(p);
                if (m <= a.r)
                    events.push_back(Touch::Inner);
                else if (m >= a.R)
                    events.push_back(Touch::Outer);
            }
        }
        total += alternations(events);
    }
    return total;
}

int rect_interface_crossings(const InterfaceSet& F, const Rect& rect, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis: must be 1 or 2");
    if (rect.degenerate()) throw std::invalid_argument("rect: degenerate rectangle");
    double h = 1.0 / static_cast<double>(F.side);
    double lo = axis == 1 ? rect.x0 : rect.y0;
    double hi = axis == 1 ? rect.x1 : rect.y1;

    int total = 0;
    std::vector<double> ts;
    for (const auto& loop : F.loops) {
        const auto& v = loop.verts;
        const std::size_t n = v.size();

        // classified samples around the loop: -1 outside rect, else touch mask
        std::vector<int> samples;
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 p0{v[i][0] * h, v[i][1] * h};
            Vec2 p1{v[(i + 1) % n][0] * h, v[(i + 1) % n][1] * h};
            ts.clear();
            ts.push_back(0.0);
            auto add_line = [&](double a0, double b0, double target) {
                if (a0 == b0) return;
                double t = (target - a0) / (b0 - a0);
                if (t > 0.0 && t < 1.0) ts.push_back(t);
            };
            add_line(p0.x, p1.x, rect.x0);
            add_line(p0.x, p1.x, rect.x1);
            add_line(p0.y, p1.y, rect.y0);
            add_line(p0.y, p1.y, rect.y1);
            std::sort(ts.begin(), ts.end());
            for (double t : ts) {
                Vec2 p = p0 + t * (p1 - p0);
                if (!rect.contains(p)) {
                    samples.push_back(-1);
                    continue;
                }
                double c = axis == 1 ? p.x : p.y;
                int mask = 0;
                if (c <= lo) mask |= 1;
                if (c >= hi) mask |= 2;
                samples.push_back(mask);
            }
        }

        // split into maximal in-rect runs (cyclic when the loop never exits)
        bool never_exits = std::none_of(samples.begin(), samples.end(),
                                        [](int s) { return s < 0; });
        auto count_run = [&](const std::vector<int>& run, bool cyclic) {
            std::vector<Touch> events;
            for (int s : run) {
                if (s & 1) events.push_back(Touch::Inner);
                if (s & 2) events.push_back(Touch::Outer);
            }
            if (cyclic) return alternations(events);
            if (events.size() < 2) return 0;
            std::vector<Touch> dedup;
            for (Touch e : events)
                if (dedup.empty() || dedup.back() != e) dedup.push_back(e);
            int count = 0;
            for (std::size_t i = 1; i < dedup.size(); ++i)
                if (dedup[i] != dedup[i - 1]) ++count;
            return count;
        };

        if (never_exits) {
            total += count_run(samples, true);
            continue;
        }
        // rotate so the walk starts outside, then scan linear runs
        std::size_t start = 0;
        while (samples[start] >= 0) ++start;
        std::vector<int> run;
        for (std::size_t k = 0; k <= samples.size(); ++k) {
            int s = samples[(start + k) % samples.size()];
            if (s < 0) {
                if (!run.empty()) {
                    total += count_run(run, false);
                    run.clear();
                }
            } else {
                run.push_back(s);
            }
        }
        if (!run.empty()) total += count_run(run, false);
    }
    return total;
}

AnnulusCrossingIndex::AnnulusCrossingIndex(const InterfaceSet& F, double tile_size)
    : set_(&F), h_(1.0 / static_cast<double>(F.side)) {
    tile_ = tile_size > 0 ? tile_size : std::max(1.0 / 32.0, 8.0 * h_);
    tiles_ = std::max(1, static_cast<int>(std::ceil(1.0 / tile_)));
    buckets_.resize(static_cast<std::size_t>(tiles_) * tiles_);
    for (std::uint32_t li = 0; li < F.loops.size(); ++li) {
        const auto& v = F.loops[li].verts;
        for (std::uint32_t e = 0; e < v.size(); ++e) {
            const auto& a = v[e];
            const auto& b = v[(e + 1) % v.size()];
            double mx = 0.5 * (a[0] + b[0]) * h_;
            double my = 0.5 * (a[1] + b[1]) * h_;
            int tx = std::clamp(static_cast<int>(mx / tile_), 0, tiles_ - 1);
            int ty = std::clamp(static_cast<int>(my / tile_), 0, tiles_ - 1);
            buckets_[static_cast<std::size_t>(ty) * tiles_ + tx].emplace_back(li, e);
        }
    }
}

int AnnulusCrossingIndex::count(const AnnulusSpec& a) const {
    a.validate();
    // candidate tiles: those meeting a band around either boundary contour
    double margin = tile_ * 1.5 + 2.0 * h_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cand;
    int t_lo_x = std::clamp(static_cast<int>((a.center.x - a.R / 2 - margin) / tile_), 0,
                            tiles_ - 1);
    int t_hi_x = std::clamp(static_cast<int>((a.center.x + a.R / 2 + margin) / tile_), 0,
                            tiles_ - 1);
    int t_lo_y = std::clamp(static_cast<int>((a.center.y - a.R / 2 - margin) / tile_), 0,
                            tiles_ - 1);
    int t_hi_y = std::clamp(static_cast<int>((a.center.y + a.R / 2 + margin) / tile_), 0,
                            tiles_ - 1);
    for (int ty = t_lo_y; ty <= t_hi_y; ++ty)
        for (int tx = t_lo_x; tx <= t_hi_x; ++tx) {
            // tile centre distance to the two contours
            Vec2 c{(tx + 0.5) * tile_, (ty + 0.5) * tile_};
            double m = a.linf2(c);
            bool near_inner = std::abs(m - a.r) <= 2 * (margin + tile_);
            bool near_outer = std::abs(m - a.R) <= 2 * (margin + tile_);
            if (!near_inner && !near_outer) continue;
            const auto& b = buckets_[static_cast<std::size_t>(ty) * tiles_ + tx];
            cand.insert(cand.end(), b.begin(), b.end());
        }
    std::sort(cand.begin(), cand.end());

    int total = 0;
    std::vector<double> ts;
    std::vector<Touch> events;
    std::size_t i = 0;
    while (i < cand.size()) {
        std::uint32_t loop_id = cand[i].first;
        const auto& v = set_->loops[loop_id].verts;
        events.clear();
        for (; i < cand.size() && cand[i].first == loop_id; ++i) {
            std::uint32_t e = cand[i].second;
            Vec2 p0{v[e][0] * h_, v[e][1] * h_};
            Vec2 p1{v[(e + 1) % v.size()][0] * h_, v[(e + 1) % v.size()][1] * h_};
            boundary_cuts(p0, p1, a, ts);
            for (double t : ts) {
                Vec2 p = p0 + t * (p1 - p0);
                double m = a.linf2(p);
                if (m <= a.r)
                    events.push_back(Touch::Inner);
                else if (m >= a.R)
                    events.push_back(Touch::Outer);
            }
        }
        total += alternations(events);
    }
    return total;
}

namespace {

struct Dinic {
    struct Edge {
        int to, cap;
        std::size_t rev;
    };
    std::vector<std::vector<Edge>> g;
    std::vector<int> level, iter;

    explicit Dinic(int n) : g(n), level(n), iter(n) {}

    void add_edge(int from, int to, int cap) {
        g[from].push_back({to, cap, g[to].size()});
        g[to].push_back({from, 0, g[from].size() - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& e : g[v]) {
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    int dfs(int v, int t, int f) {
        if (v == t) return f;
        for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
            Edge& e = g[v][static_cast<std::size_t>(i)];
            if (e.cap > 0 && level[v] < level[e.to]) {
                int d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            while (int f = dfs(s, t, 1 << 30)) flow += f;
        }
        return flow;
    }
};

}  // namespace

int annulus_black_crossings(const LevelConfiguration& config, const AnnulusSpec& a) {
    a.validate();
    if (config.params().d != 2) throw std::invalid_argument("annulus: d must be 2");
    if (config.empty()) return 0;

    const std::int64_t S = static_cast<std::int64_t>(config.side());
    const double h = 1.0 / static_cast<double>(S);
    const double cx = a.center.x, cy = a.center.y;

    auto intersects_outer = [&](std::int64_t x, std::int64_t y) {
        double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
        return lox <= cx + a.R / 2 && hix >= cx - a.R / 2 && loy <= cy + a.R / 2 &&
               hiy >= cy - a.R / 2;
    };
    auto inside_open_inner = [&](std::int64_t x, std::int64_t y) {
        double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
        return cx - a.r / 2 < lox && hix < cx + a.r / 2 && cy - a.r / 2 < loy &&
               hiy < cy + a.r / 2;
    };
    auto touches_inner = [&](std::int64_t x, std::int64_t y) {
        double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
        return lox <= cx + a.r / 2 && hix >= cx - a.r / 2 && loy <= cy + a.r / 2 &&
               hiy >= cy - a.r / 2;
    };
    auto inside_open_outer = [&](std::int64_t x, std::int64_t y) {
        double lox = (x - 1) * h, hix = x * h, loy = (y - 1) * h, hiy = y * h;
        return cx - a.R / 2 < lox && hix < cx + a.R / 2 && cy - a.R / 2 < loy &&
               hiy < cy + a.R / 2;
    };

    std::int64_t x_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                      std::floor((cx - a.R / 2) / h)));
    std::int64_t x_hi = std::min<std::int64_t>(S, static_cast<std::int64_t>(
                                                      std::ceil((cx + a.R / 2) / h)) + 1);
    std::int64_t y_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                      std::floor((cy - a.R / 2) / h)));
    std::int64_t y_hi = std::min<std::int64_t>(S, static_cast<std::int64_t>(
                                                      std::ceil((cy + a.R / 2) / h)) + 1);

    // collect annulus cells: window-local id
    std::int64_t W = x_hi - x_lo + 1;
    std::int64_t H = y_hi - y_lo + 1;
    if (W <= 0 || H <= 0) return 0;
    std::vector<int> id(static_cast<std::size_t>(W) * H, -1);
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (std::int64_t y = y_lo; y <= y_hi; ++y)
        for (std::int64_t x = x_lo; x <= x_hi; ++x) {
            if (!config.retained2(x, y)) continue;
            if (!intersects_outer(x, y) || inside_open_inner(x, y)) continue;
            id[static_cast<std::size_t>(y - y_lo) * W + (x - x_lo)] =
                static_cast<int>(cells.size());
            cells.emplace_back(x, y);
        }
    if (cells.empty()) return 0;

    // node 2i = in, 2i+1 = out; then source, sink
    int ncells = static_cast<int>(cells.size());
    Dinic dinic(2 * ncells + 2);
    int source = 2 * ncells, sink = 2 * ncells + 1;
    for (int i = 0; i < ncells; ++i) {
        dinic.add_edge(2 * i, 2 * i + 1, 1);
        auto [x, y] = cells[static_cast<std::size_t>(i)];
        if (touches_inner(x, y)) dinic.add_edge(source, 2 * i, 1);
        if (!inside_open_outer(x, y)) dinic.add_edge(2 * i + 1, sink, 1);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                std::int64_t nx = x + dx, ny = y + dy;
                if (nx < x_lo || ny < y_lo || nx > x_hi || ny > y_hi) continue;
                int j = id[static_cast<std::size_t>(ny - y_lo) * W + (nx - x_lo)];
                if (j >= 0) dinic.add_edge(2 * i + 1, 2 * j, 1);
            }
    }
    return dinic.max_flow(source, sink);
}

}  // namespace fracperc
