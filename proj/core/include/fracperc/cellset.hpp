#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fracperc/config.hpp"

namespace fracperc {

/// A set of level-`level` cells on the N-adic grid, sorted packed indices.
/// Used as the box-counting target for configurations, covers, and masks.
struct CellSet {
    std::uint32_t N = 2;
    std::uint32_t d = 2;
    int level = 1;
    std::uint64_t side = 2;
    std::vector<std::uint64_t> packed;  // sorted ascending

    static CellSet from_config(const LevelConfiguration& config) {
        CellSet s;
        s.N = config.params().N;
        s.d = config.params().d;
        s.level = config.level();
        s.side = config.side();
        s.packed.reserve(config.z());
        config.for_each_packed([&](std::uint64_t idx) { s.packed.push_back(idx); });
        return s;
    }

    std::uint64_t size() const { return packed.size(); }
    bool empty() const { return packed.empty(); }
    bool contains(std::uint64_t idx) const {
        return std::binary_search(packed.begin(), packed.end(), idx);
    }

    void unpack(std::uint64_t idx, std::span<Coord> out) const {
        for (std::size_t l = 0; l < out.size(); ++l) {
            out[l] = static_cast<Coord>(idx % side) + 1;
            idx /= side;
        }
    }
};

}  // namespace fracperc
