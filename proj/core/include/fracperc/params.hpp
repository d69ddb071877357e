#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracperc/geometry.hpp"

namespace fracperc {

/// Thrown when a requested grid would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Full law of the process: subdivision factor N, dimension d, retention
/// probability p, and the master seed that determines every cell decision.
struct ProcessParams {
    std::uint32_t N = 2;
    std::uint32_t d = 2;
    double p = 0.5;
    std::uint64_t seed = 0;

    void validate() const {
        if (N < 2) throw std::invalid_argument("N: subdivision factor must be >= 2");
        if (d < 2) throw std::invalid_argument("d: dimension must be >= 2");
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p: must be in [0,1]");
    }

    friend bool operator==(const ProcessParams&, const ProcessParams&) = default;
};

using Coord = std::uint32_t;

/// Level-n grid cell, 1-based coordinates k_l in [1, N^n] per axis.
struct CellIndex {
    int level = 1;
    std::vector<Coord> k;
};

/// N^n as u64; throws if the coordinate range no longer fits comfortably.
inline std::uint64_t grid_side(std::uint32_t N, int level) {
    std::uint64_t s = 1;
    for (int i = 0; i < level; ++i) {
        s *= N;
        if (s > (std::uint64_t{1} << 31))
            throw std::invalid_argument("level: N^n exceeds the supported coordinate range");
    }
    return s;
}

inline void validate_cell(const ProcessParams& params, const CellIndex& cell) {
    if (cell.level < 1) throw std::invalid_argument("cell: level must be >= 1");
    if (cell.k.size() != params.d) throw std::invalid_argument("cell: coordinate arity != d");
    std::uint64_t side = grid_side(params.N, cell.level);
    for (Coord c : cell.k)
        if (c < 1 || c > side) throw std::invalid_argument("cell: coordinate out of [1, N^n]");
}

/// The closed box I^n_{k_1} x ... x I^n_{k_d} of a cell, side length N^{-n}.
inline Box cell_box(const ProcessParams& params, const CellIndex& cell) {
    validate_cell(params, cell);
    double h = 1.0;
    for (int i = 0; i < cell.level; ++i) h /= params.N;
    Box b;
    b.lo.reserve(cell.k.size());
    b.hi.reserve(cell.k.size());
    for (Coord c : cell.k) {
        b.lo.push_back((c - 1) * h);
        b.hi.push_back(c * h);
    }
    return b;
}

}  // namespace fracperc
