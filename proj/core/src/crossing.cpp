#include "fracperc/crossing.hpp"

#include <cmath>

namespace fracperc {

namespace {

// BFS over retained cells with Chebyshev adjacency, generic in d.
// `is_source` / `is_target` take 1-based coordinates.
template <class Source, class Target>
bool chebyshev_reach(const LevelConfiguration& config, Source&& is_source, Target&& is_target) {
    const std::uint32_t d = config.params().d;
    const std::uint64_t side = config.side();

    std::vector<std::uint64_t> stack;
    std::vector<std::uint64_t> visited_words;  // bitmap over packed indices (dense only)
    std::vector<std::uint64_t> visited_sparse;

    const bool dense = config.dense();
    if (dense) visited_words.assign((side * side + 63) / 64, 0);

    auto visit = [&](std::uint64_t idx) {
        if (dense) {
            std::uint64_t& w = visited_words[idx >> 6];
            std::uint64_t bit = std::uint64_t{1} << (idx & 63);
            if (w & bit) return false;
            w |= bit;
            return true;
        }
        auto it = std::lower_bound(visited_sparse.begin(), visited_sparse.end(), idx);
        if (it != visited_sparse.end() && *it == idx) return false;
        visited_sparse.insert(it, idx);
        return true;
    };

    std::vector<Coord> k(d);
    config.for_each_packed([&](std::uint64_t idx) {
        config.unpack(idx, k);
        if (is_source(std::span<const Coord>(k)) && visit(idx)) stack.push_back(idx);
    });

    std::vector<std::int64_t> c(d);
    while (!stack.empty()) {
        std::uint64_t idx = stack.back();
        stack.pop_back();
        config.unpack(idx, k);
        if (is_target(std::span<const Coord>(k))) return true;

        // enumerate all 3^d-1 neighbours
        std::vector<int> off(d, -1);
        while (true) {
            bool all_zero = true;
            for (std::uint32_t l = 0; l < d; ++l)
                if (off[l] != 0) all_zero = false;
            if (!all_zero) {
                bool ok = true;
                std::uint64_t nidx = 0, stride = 1;
                for (std::uint32_t l = 0; l < d; ++l) {
                    std::int64_t v = static_cast<std::int64_t>(k[l]) + off[l];
                    if (v < 1 || v > static_cast<std::int64_t>(side)) {
                        ok = false;
                        break;
                    }
                    nidx += static_cast<std::uint64_t>(v - 1) * stride;
                    stride *= side;
                }
                if (ok && config.retained_packed(nidx) && visit(nidx)) stack.push_back(nidx);
            }
            std::uint32_t l = 0;
            while (l < d && ++off[l] == 2) off[l++] = -1;
            if (l == d) break;
        }
    }
    return false;
}

}  // namespace

bool left_right_crossing(const LevelConfiguration& config) {
    if (config.empty()) return false;
    const std::uint64_t side = config.side();
    return chebyshev_reach(
        config, [](std::span<const Coord> k) { return k[0] == 1; },
        [side](std::span<const Coord> k) { return k[0] == side; });
}

bool rectangle_crossing(const LevelConfiguration& config, const Rect& rect, int axis) {
    if (config.params().d != 2) throw std::invalid_argument("rectangle_crossing: d must be 2");
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis: must be 1 or 2");
    if (rect.degenerate()) throw std::invalid_argument("rect: degenerate rectangle");
    if (config.empty()) return false;

    const double h = 1.0 / static_cast<double>(config.side());
    auto cell_low = [&](Coord c) { return (c - 1) * h; };
    auto cell_high = [&](Coord c) { return c * h; };

    auto in_rect = [&](std::span<const Coord> k) {
        return cell_low(k[0]) <= rect.x1 && cell_high(k[0]) >= rect.x0 &&
               cell_low(k[1]) <= rect.y1 && cell_high(k[1]) >= rect.y0;
    };
    double face_lo = axis == 1 ? rect.x0 : rect.y0;
    double face_hi = axis == 1 ? rect.x1 : rect.y1;
    int ax = axis - 1;

    auto source = [&](std::span<const Coord> k) {
        if (!in_rect(k)) return false;
        return cell_low(k[ax]) <= face_lo && cell_high(k[ax]) >= face_lo;
    };
    auto target = [&](std::span<const Coord> k) {
        if (!in_rect(k)) return false;
        return cell_low(k[ax]) <= face_hi && cell_high(k[ax]) >= face_hi;
    };

    // BFS on the subgraph: reuse chebyshev_reach but treat out-of-rect cells
    // as absent by wrapping the membership test.
    const std::uint64_t side = config.side();
    std::vector<std::uint64_t> stack;
    std::vector<std::uint64_t> visited((config.dense() ? (side * side + 63) / 64 : 0), 0);
    std::vector<std::uint64_t> visited_sparse;
    auto visit = [&](std::uint64_t idx) {
        if (config.dense()) {
            std::uint64_t& w = visited[idx >> 6];
            std::uint64_t bit = std::uint64_t{1} << (idx & 63);
            if (w & bit) return false;
            w |= bit;
            return true;
        }
        auto it = std::lower_bound(visited_sparse.begin(), visited_sparse.end(), idx);
        if (it != visited_sparse.end() && *it == idx) return false;
        visited_sparse.insert(it, idx);
        return true;
    };

    std::vector<Coord> k(2);
    config.for_each_packed([&](std::uint64_t idx) {
        config.unpack(idx, k);
        if (source(std::span<const Coord>(k)) && visit(idx)) stack.push_back(idx);
    });

    while (!stack.empty()) {
        std::uint64_t idx = stack.back();
        stack.pop_back();
        config.unpack(idx, k);
        if (target(std::span<const Coord>(k))) return true;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                std::int64_t x = static_cast<std::int64_t>(k[0]) + dx;
                std::int64_t y = static_cast<std::int64_t>(k[1]) + dy;
                if (x < 1 || y < 1 || x > static_cast<std::int64_t>(side) ||
                    y > static_cast<std::int64_t>(side))
                    continue;
                Coord nk[2] = {static_cast<Coord>(x), static_cast<Coord>(y)};
                if (!in_rect(std::span<const Coord>(nk, 2))) continue;
                std::uint64_t nidx = static_cast<std::uint64_t>(y - 1) * side + (x - 1);
                if (config.retained_packed(nidx) && visit(nidx)) stack.push_back(nidx);
            }
    }
    return false;
}

ShellSpec ShellSpec::around_cell(const ProcessParams& params, const CellIndex& cell) {
    validate_cell(params, cell);
    if (params.N < 4)
        throw std::invalid_argument("shell: inner box does not fit inside outer box for N < 4");
    ShellSpec s;
    s.level = cell.level;
    s.N = params.N;
    s.d = params.d;
    s.inner_lo.resize(params.d);
    s.inner_hi.resize(params.d);
    s.outer_lo.resize(params.d);
    s.outer_hi.resize(params.d);
    for (std::uint32_t l = 0; l < params.d; ++l) {
        // cell box is [2(c-1), 2c] in half-cell units, centre 2c-1
        std::int64_t c2 = 2 * static_cast<std::int64_t>(cell.k[l]) - 1;
        s.inner_lo[l] = c2 - 3;
        s.inner_hi[l] = c2 + 3;
        s.outer_lo[l] = c2 - static_cast<std::int64_t>(params.N);
        s.outer_hi[l] = c2 + static_cast<std::int64_t>(params.N);
    }
    return s;
}

ShellSpec ShellSpec::center_cell_level1(const ProcessParams& params) {
    if (params.N < 5 || params.N % 2 == 0)
        throw std::invalid_argument(
            "shell: the centre-cell geometry requires N >= 5 odd; "
            "use the generalized-centre variant for other N");
    CellIndex center{1, std::vector<Coord>(params.d, (params.N + 1) / 2)};
    return around_cell(params, center);
}

ShellSpec ShellSpec::generalized_center_level1(const ProcessParams& params) {
    if (params.N < 4)
        throw std::invalid_argument("shell: inner box does not fit inside outer box for N < 4");
    ShellSpec s;
    s.level = 1;
    s.N = params.N;
    s.d = params.d;
    s.generalized = true;
    std::int64_t c2 = params.N;  // cube centre in half-cell units of level 1
    s.inner_lo.assign(params.d, c2 - 3);
    s.inner_hi.assign(params.d, c2 + 3);
    s.outer_lo.assign(params.d, 0);
    s.outer_hi.assign(params.d, 2 * static_cast<std::int64_t>(params.N));
    return s;
}

bool shell_crossing(const LevelConfiguration& config, const ShellSpec& shell) {
    if (shell.level > config.level())
        throw std::invalid_argument("shell: shell level exceeds configuration level");
    if (shell.d != config.params().d) throw std::invalid_argument("shell: dimension mismatch");
    if (config.empty()) return false;

    const std::uint32_t d = shell.d;
    const std::uint64_t side = config.side();
    std::int64_t scale = 1;
    for (int i = shell.level; i < config.level(); ++i) scale *= config.params().N;

    // everything below in units of 1/(2 N^n); cell k occupies [2(k-1), 2k]
    std::vector<std::int64_t> ilo(d), ihi(d), olo(d), ohi(d);
    for (std::uint32_t l = 0; l < d; ++l) {
        ilo[l] = shell.inner_lo[l] * scale;
        ihi[l] = shell.inner_hi[l] * scale;
        olo[l] = shell.outer_lo[l] * scale;
        ohi[l] = shell.outer_hi[l] * scale;
    }

    auto box_lo = [](Coord c) { return 2 * (static_cast<std::int64_t>(c) - 1); };
    auto box_hi = [](Coord c) { return 2 * static_cast<std::int64_t>(c); };

    auto in_shell = [&](std::span<const Coord> k) {
        bool inside_inner = true;
        for (std::uint32_t l = 0; l < d; ++l) {
            if (box_lo(k[l]) > ohi[l] || box_hi(k[l]) < olo[l]) return false;  // outside outer
            if (!(ilo[l] < box_lo(k[l]) && box_hi(k[l]) < ihi[l])) inside_inner = false;
        }
        return !inside_inner;  // strictly inside the open inner box is excluded
    };
    auto touches_inner = [&](std::span<const Coord> k) {
        for (std::uint32_t l = 0; l < d; ++l)
            if (box_lo(k[l]) > ihi[l] || box_hi(k[l]) < ilo[l]) return false;
        return true;
    };
    auto touches_outer = [&](std::span<const Coord> k) {
        for (std::uint32_t l = 0; l < d; ++l)
            if (!(olo[l] < box_lo(k[l]) && box_hi(k[l]) < ohi[l])) return true;
        return false;
    };

    // candidate window: cells meeting the clipped outer box
    std::vector<Coord> wlo(d), whi(d);
    for (std::uint32_t l = 0; l < d; ++l) {
        std::int64_t lo = std::max<std::int64_t>(olo[l], 0);
        std::int64_t hi = std::min<std::int64_t>(ohi[l], 2 * static_cast<std::int64_t>(side));
        if (lo > hi) return false;  // shell entirely outside the cube
        wlo[l] = static_cast<Coord>(lo / 2 + 1);
        whi[l] = static_cast<Coord>(std::min<std::int64_t>((hi + 1) / 2, side));
        if (whi[l] < wlo[l]) return false;
    }

    // local BFS over the window
    std::vector<std::uint64_t> wside(d), wstride(d);
    std::uint64_t total = 1;
    for (std::uint32_t l = 0; l < d; ++l) {
        wside[l] = whi[l] - wlo[l] + 1;
        wstride[l] = total;
        total *= wside[l];
    }
    std::vector<std::uint8_t> state(total, 0);  // 0 unseen, 1 queued
    std::vector<std::uint64_t> stack;

    auto local_pack = [&](std::span<const Coord> k) {
        std::uint64_t idx = 0;
        for (std::uint32_t l = 0; l < d; ++l) idx += (k[l] - wlo[l]) * wstride[l];
        return idx;
    };
    auto global_pack = [&](std::span<const Coord> k) {
        std::uint64_t idx = 0, stride = 1;
        for (std::uint32_t l = 0; l < d; ++l) {
            idx += static_cast<std::uint64_t>(k[l] - 1) * stride;
            stride *= side;
        }
        return idx;
    };

    std::vector<Coord> k(d);
    // seed with retained shell cells touching the inner boundary
    std::vector<Coord> cur(wlo);
    while (true) {
        std::span<const Coord> ks(cur);
        if (touches_inner(ks) && in_shell(ks) && config.retained_packed(global_pack(ks))) {
            std::uint64_t li = local_pack(ks);
            if (!state[li]) {
                state[li] = 1;
                stack.push_back(li);
            }
        }
        std::uint32_t l = 0;
        while (l < d && ++cur[l] > whi[l]) cur[l++] = wlo[l];
        if (l == d) break;
    }

    while (!stack.empty()) {
        std::uint64_t li = stack.back();
        stack.pop_back();
        std::uint64_t t = li;
        for (std::uint32_t l = 0; l < d; ++l) {
            k[l] = static_cast<Coord>(t % wside[l]) + wlo[l];
            t /= wside[l];
        }
        if (touches_outer(k)) return true;

        std::vector<int> off(d, -1);
        while (true) {
            bool all_zero = true;
            for (std::uint32_t l = 0; l < d; ++l)
                if (off[l] != 0) all_zero = false;
            if (!all_zero) {
                bool ok = true;
                Coord nk[16];
                for (std::uint32_t l = 0; l < d; ++l) {
                    std::int64_t v = static_cast<std::int64_t>(k[l]) + off[l];
                    if (v < wlo[l] || v > whi[l]) {
                        ok = false;
                        break;
                    }
                    nk[l] = static_cast<Coord>(v);
                }
                if (ok) {
                    std::span<const Coord> ns(nk, d);
                    std::uint64_t li2 = local_pack(ns);
                    if (!state[li2] && in_shell(ns) &&
                        config.retained_packed(global_pack(ns))) {
                        state[li2] = 1;
                        stack.push_back(li2);
                    }
                }
            }
            std::uint32_t l = 0;
            while (l < d && ++off[l] == 2) off[l++] = -1;
            if (l == d) break;
        }
    }
    return false;
}

bool shells_disjoint(const ProcessParams& params, const CellIndex& child_cell) {
    if (child_cell.level < 2) throw std::invalid_argument("cell: needs a parent shell");
    CellIndex parent;
    parent.level = child_cell.level - 1;
    parent.k.resize(child_cell.k.size());
    for (std::size_t l = 0; l < child_cell.k.size(); ++l)
        parent.k[l] = (child_cell.k[l] - 1) / params.N + 1;

    ShellSpec cs = ShellSpec::around_cell(params, child_cell);
    ShellSpec ps = ShellSpec::around_cell(params, parent);
    // compare in child units: parent half-units scale by N
    for (std::uint32_t l = 0; l < params.d; ++l) {
        std::int64_t pil = ps.inner_lo[l] * params.N;
        std::int64_t pih = ps.inner_hi[l] * params.N;
        if (!(pil < cs.outer_lo[l] && cs.outer_hi[l] < pih)) return false;
    }
    return true;
}

}  // namespace fracperc
