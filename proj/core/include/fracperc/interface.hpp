#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fracperc/config.hpp"
#include "fracperc/curve.hpp"

namespace fracperc {

/// Closed loop of grid vertices at resolution N^-n, traversed with retained
/// cells on the left and non-retained cells (or the exterior) on the right.
/// Vertices are stored in grid units (0 .. N^n); the starting vertex is the
/// lexicographically smallest rotation, so equal loops compare equal.
struct OrientedLoop {
    std::vector<std::array<std::int32_t, 2>> verts;  // closed, first vertex not repeated
    bool ccw = true;

    std::size_t edge_count() const { return verts.size(); }

    /// Real-coordinate closed polyline (first vertex repeated at the end).
    Curve to_curve(std::uint64_t side) const {
        Curve c;
        double h = 1.0 / static_cast<double>(side);
        c.pts.reserve(verts.size() + 1);
        for (const auto& v : verts) c.pts.push_back({v[0] * h, v[1] * h});
        c.pts.push_back(c.pts.front());
        return c;
    }
};

/// The interface curves F_n of a d=2 configuration.
struct InterfaceSet {
    int level = 1;
    std::uint32_t N = 2;
    std::uint64_t side = 2;
    std::vector<OrientedLoop> loops;

    std::vector<Curve> to_curves() const {
        std::vector<Curve> out;
        out.reserve(loops.size());
        for (const auto& loop : loops) out.push_back(loop.to_curve(side));
        return out;
    }
};

/// Traces every interface loop: black squares on the left, right turn at
/// checkerboard vertices (so diagonal black cells stay connected and
/// diagonal white cells are separated). Each boundary edge appears in
/// exactly one loop, exactly once.
InterfaceSet trace_interfaces(const LevelConfiguration& config);

}  // namespace fracperc
