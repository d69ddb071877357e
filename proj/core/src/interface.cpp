#include "fracperc/interface.hpp"

#include <stdexcept>

namespace fracperc {

namespace {

// Directions: 0=+x, 1=+y, 2=-x, 3=-y. Right of dir is (dir+3)&3.
struct Tracer {
    const LevelConfiguration& config;
    std::int64_t S;
    std::vector<std::uint64_t> hvisited;  // horizontal edge (x,y): x in [0,S), y in [0,S]
    std::vector<std::uint64_t> vvisited;  // vertical edge (x,y): x in [0,S], y in [0,S)

    explicit Tracer(const LevelConfiguration& c)
        : config(c), S(static_cast<std::int64_t>(c.side())) {
        hvisited.assign((static_cast<std::uint64_t>(S) * (S + 1) + 63) / 64, 0);
        vvisited.assign((static_cast<std::uint64_t>(S + 1) * S + 63) / 64, 0);
    }

    bool black(std::int64_t cx, std::int64_t cy) const { return config.retained2(cx, cy); }

    // Outgoing directed interface edge from vertex (x,y) in direction dir,
    // valid iff the edge exists with a retained cell on its left.
    bool edge_valid(std::int64_t x, std::int64_t y, int dir) const {
        switch (dir) {
            case 0:  // east along (x,y)-(x+1,y): left=cell(x+1,y+1), right=cell(x+1,y)
                return x < S && black(x + 1, y + 1) && !black(x + 1, y);
            case 1:  // north along (x,y)-(x,y+1): left=cell(x,y+1), right=cell(x+1,y+1)
                return y < S && black(x, y + 1) && !black(x + 1, y + 1);
            case 2:  // west along (x,y)-(x-1,y): left=cell(x,y), right=cell(x,y+1)
                return x > 0 && black(x, y) && !black(x, y + 1);
            case 3:  // south along (x,y)-(x,y-1): left=cell(x+1,y), right=cell(x,y)
                return y > 0 && black(x + 1, y) && !black(x, y);
            default:
                return false;
        }
    }

    // Undirected edge slot of the directed edge leaving (x,y) toward dir.
    std::uint64_t edge_slot(std::int64_t x, std::int64_t y, int dir, bool& horizontal) const {
        switch (dir) {
            case 0:
                horizontal = true;
                return static_cast<std::uint64_t>(y) * S + x;
            case 2:
                horizontal = true;
                return static_cast<std::uint64_t>(y) * S + (x - 1);
            case 1:
                horizontal = false;
                return static_cast<std::uint64_t>(y) * (S + 1) + x;
            default:
                horizontal = false;
                return static_cast<std::uint64_t>(y - 1) * (S + 1) + x;
        }
    }

    bool visited(std::uint64_t slot, bool horizontal) const {
        const auto& v = horizontal ? hvisited : vvisited;
        return (v[slot >> 6] >> (slot & 63)) & 1;
    }
    void mark(std::uint64_t slot, bool horizontal) {
        auto& v = horizontal ? hvisited : vvisited;
        v[slot >> 6] |= std::uint64_t{1} << (slot & 63);
    }

    // Walk one loop starting from the directed edge (x,y,dir).
    OrientedLoop walk(std::int64_t x0, std::int64_t y0, int dir0) {
        OrientedLoop loop;
        std::int64_t x = x0, y = y0;
        int dir = dir0;
        double area2 = 0;
        while (true) {
            loop.verts.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
            bool horizontal;
            std::uint64_t slot = edge_slot(x, y, dir, horizontal);
            mark(slot, horizontal);
            std::int64_t nx = x, ny = y;
            switch (dir) {
                case 0: ++nx; break;
                case 1: ++ny; break;
                case 2: --nx; break;
                case 3: --ny; break;
            }
            area2 += static_cast<double>(x) * ny - static_cast<double>(nx) * y;
            x = nx;
            y = ny;
            if (x == x0 && y == y0) {
                // candidate closure; the next edge must be the starting edge
                int next = next_dir(x, y, dir);
                if (next == dir0) break;
                dir = next;
                continue;
            }
            dir = next_dir(x, y, dir);
        }
        loop.ccw = area2 > 0;
        canonicalize(loop);
        return loop;
    }

    // Right turn first, then straight, then left; never reverse.
    int next_dir(std::int64_t x, std::int64_t y, int dir) const {
        for (int turn : {3, 0, 1}) {
            int nd = (dir + turn) & 3;
            if (edge_valid(x, y, nd)) return nd;
        }
        throw std::logic_error("interface trace: dead end, invariant broken");
    }

    static void canonicalize(OrientedLoop& loop) {
        auto& v = loop.verts;
        std::size_t n = v.size();
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
            // compare rotations starting at i and best
            if (v[i] < v[best]) {
                best = i;
            } else if (v[i] == v[best]) {
                for (std::size_t k = 1; k < n; ++k) {
                    const auto& a = v[(i + k) % n];
                    const auto& b = v[(best + k) % n];
                    if (a != b) {
                        if (a < b) best = i;
                        break;
                    }
                }
            }
        }
        std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(best), v.end());
    }
};

}  // namespace

InterfaceSet trace_interfaces(const LevelConfiguration& config) {
    if (config.params().d != 2) throw std::invalid_argument("trace: d must be 2");
    InterfaceSet out;
    out.level = config.level();
    out.N = config.params().N;
    out.side = config.side();

    Tracer tracer(config);
    const std::int64_t S = tracer.S;

    // horizontal edges: interface iff above != below; direction east iff above black
    for (std::int64_t y = 0; y <= S; ++y) {
        for (std::int64_t x = 0; x < S; ++x) {
            bool above = tracer.black(x + 1, y + 1);
            bool below = tracer.black(x + 1, y);
            if (above == below) continue;
            std::uint64_t slot = static_cast<std::uint64_t>(y) * S + x;
            if (tracer.visited(slot, true)) continue;
            if (above)
                out.loops.push_back(tracer.walk(x, y, 0));
            else
                out.loops.push_back(tracer.walk(x + 1, y, 2));
        }
    }
    // vertical edges: interface iff west != east; direction north iff west black
    for (std::int64_t y = 0; y < S; ++y) {
        for (std::int64_t x = 0; x <= S; ++x) {
            bool west = tracer.black(x, y + 1);
            bool east = tracer.black(x + 1, y + 1);
            if (west == east) continue;
            std::uint64_t slot = static_cast<std::uint64_t>(y) * (S + 1) + x;
            if (tracer.visited(slot, false)) continue;
            if (west)
                out.loops.push_back(tracer.walk(x, y, 1));
            else
                out.loops.push_back(tracer.walk(x, y + 1, 3));
        }
    }

    std::sort(out.loops.begin(), out.loops.end(),
              [](const OrientedLoop& a, const OrientedLoop& b) { return a.verts < b.verts; });
    return out;
}

}  // namespace fracperc
