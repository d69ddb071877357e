#include "fracperc/lowest.hpp"

#include <stdexcept>

namespace fracperc {

namespace {

// White cells 4-connected to the bottom edge ("the sea"). Packed row-major.
std::vector<std::uint8_t> bottom_sea(const LevelConfiguration& config) {
    const std::int64_t S = static_cast<std::int64_t>(config.side());
    std::vector<std::uint8_t> sea(static_cast<std::size_t>(S) * S, 0);
    std::vector<std::int64_t> stack;
    auto at = [&](std::int64_t x, std::int64_t y) -> std::uint8_t& {
        return sea[static_cast<std::size_t>(y - 1) * S + (x - 1)];
    };
    for (std::int64_t x = 1; x <= S; ++x) {
        if (!config.retained2(x, 1) && !at(x, 1)) {
            at(x, 1) = 1;
            stack.push_back((1 - 1) * S + (x - 1));
        }
    }
    const std::int64_t dx[4] = {1, -1, 0, 0};
    const std::int64_t dy[4] = {0, 0, 1, -1};
    while (!stack.empty()) {
        std::int64_t idx = stack.back();
        stack.pop_back();
        std::int64_t x = idx % S + 1, y = idx / S + 1;
        for (int k = 0; k < 4; ++k) {
            std::int64_t nx = x + dx[k], ny = y + dy[k];
            if (nx < 1 || ny < 1 || nx > S || ny > S) continue;
            if (config.retained2(nx, ny) || at(nx, ny)) continue;
            at(nx, ny) = 1;
            stack.push_back((ny - 1) * S + (nx - 1));
        }
    }
    return sea;
}

struct SeaWalk {
    std::int64_t S;
    const std::vector<std::uint8_t>& sea;

    // solid = inside the square and not part of the sea
    bool solid(std::int64_t cx, std::int64_t cy) const {
        if (cx < 1 || cy < 1 || cx > S || cy > S) return false;
        return !sea[static_cast<std::size_t>(cy - 1) * S + (cx - 1)];
    }

    // Directed edge from (x,y) toward dir with solid on the left and the sea
    // (or the exterior of the bottom/left/right sides) on the right.
    bool edge_valid(std::int64_t x, std::int64_t y, int dir) const {
        switch (dir) {
            case 0: return x < S && solid(x + 1, y + 1) && !solid(x + 1, y);
            case 1: return y < S && solid(x, y + 1) && !solid(x + 1, y + 1);
            case 2: return x > 0 && solid(x, y) && !solid(x, y + 1);
            case 3: return y > 0 && solid(x + 1, y) && !solid(x, y);
            default: return false;
        }
    }

    int next_dir(std::int64_t x, std::int64_t y, int dir) const {
        for (int turn : {3, 0, 1}) {
            int nd = (dir + turn) & 3;
            if (edge_valid(x, y, nd)) return nd;
        }
        throw std::logic_error("lowest crossing: dead end, invariant broken");
    }
};

}  // namespace

std::optional<std::vector<std::array<std::int32_t, 2>>> lowest_crossing_vertices(
    const LevelConfiguration& config) {
    if (config.params().d != 2) throw std::invalid_argument("lowest crossing: d must be 2");
    const std::int64_t S = static_cast<std::int64_t>(config.side());
    auto sea = bottom_sea(config);

    // white top-bottom crossing (4-connected) excludes a black left-right one
    for (std::int64_t x = 1; x <= S; ++x)
        if (sea[static_cast<std::size_t>(S - 1) * S + (x - 1)]) return std::nullopt;

    SeaWalk walk{S, sea};

    // Try the left-edge departures bottom-up. A departure over an engulfed
    // island walks a closed loop back to its start; the lowest departure on
    // the sea's outer boundary is the one whose walk reaches the right edge.
    const std::uint64_t step_cap = 8 * static_cast<std::uint64_t>(S + 1) * (S + 1) + 16;
    for (std::int64_t y0 = 0; y0 < S; ++y0) {
        if (!walk.edge_valid(0, y0, 0)) continue;
        std::vector<std::array<std::int32_t, 2>> verts;
        std::int64_t x = 0, y = y0;
        int dir = 0;
        verts.push_back({0, static_cast<std::int32_t>(y0)});
        bool closed = false;
        std::uint64_t steps = 0;
        while (true) {
            if (++steps > step_cap)
                throw std::logic_error("lowest crossing: walk did not terminate");
            switch (dir) {
                case 0: ++x; break;
                case 1: ++y; break;
                case 2: --x; break;
                case 3: --y; break;
            }
            verts.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
            if (x == S) break;
            dir = walk.next_dir(x, y, dir);
            if (x == 0 && y == y0 && dir == 0) {
                closed = true;  // island loop, not the crossing
                break;
            }
        }
        if (!closed) return verts;
    }
    throw std::logic_error("lowest crossing: no boundary walk reached the right edge");
}

std::optional<Curve> lowest_crossing(const LevelConfiguration& config) {
    auto verts = lowest_crossing_vertices(config);
    if (!verts) return std::nullopt;
    Curve c;
    double h = 1.0 / static_cast<double>(config.side());
    c.pts.reserve(verts->size());
    for (const auto& v : *verts) c.pts.push_back({v[0] * h, v[1] * h});
    return c;
}

std::vector<std::uint8_t> region_above_lowest(const LevelConfiguration& config) {
    auto verts = lowest_crossing_vertices(config);
    if (!verts) return {};
    const std::int64_t S = static_cast<std::int64_t>(config.side());

    // block the 4-moves that would step across the curve
    // horizontal curve edge at (x,y)->(x+1,y): separates cell (x+1,y) from (x+1,y+1)
    // vertical curve edge at (x,y)->(x,y+1): separates cell (x,y+1) from (x+1,y+1)
    std::vector<std::uint8_t> hblock(static_cast<std::size_t>(S) * (S + 1), 0);
    std::vector<std::uint8_t> vblock(static_cast<std::size_t>(S + 1) * S, 0);
    for (std::size_t i = 1; i < verts->size(); ++i) {
        auto a = (*verts)[i - 1], b = (*verts)[i];
        if (a[1] == b[1]) {
            std::int64_t x = std::min(a[0], b[0]);
            hblock[static_cast<std::size_t>(a[1]) * S + x] = 1;
        } else {
            std::int64_t y = std::min(a[1], b[1]);
            vblock[static_cast<std::size_t>(y) * (S + 1) + a[0]] = 1;
        }
    }

    std::vector<std::uint8_t> above(static_cast<std::size_t>(S) * S, 0);
    std::vector<std::int64_t> stack;
    auto push = [&](std::int64_t x, std::int64_t y) {
        auto& cell = above[static_cast<std::size_t>(y - 1) * S + (x - 1)];
        if (!cell) {
            cell = 1;
            stack.push_back((y - 1) * S + (x - 1));
        }
    };
    for (std::int64_t x = 1; x <= S; ++x) push(x, S);
    while (!stack.empty()) {
        std::int64_t idx = stack.back();
        stack.pop_back();
        std::int64_t x = idx % S + 1, y = idx / S + 1;
        // up/down cross horizontal edges, left/right cross vertical edges
        if (y < S && !hblock[static_cast<std::size_t>(y) * S + (x - 1)]) push(x, y + 1);
        if (y > 1 && !hblock[static_cast<std::size_t>(y - 1) * S + (x - 1)]) push(x, y - 1);
        if (x < S && !vblock[static_cast<std::size_t>(y - 1) * (S + 1) + x]) push(x + 1, y);
        if (x > 1 && !vblock[static_cast<std::size_t>(y - 1) * (S + 1) + (x - 1)]) push(x - 1, y);
    }
    return above;
}

}  // namespace fracperc
