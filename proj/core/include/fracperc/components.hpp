#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracperc/cellset.hpp"
#include "fracperc/config.hpp"

namespace fracperc {

struct ComponentInfo {
    std::uint32_t id = 0;
    std::uint64_t cells = 0;
    std::vector<Coord> bbox_lo;  // 1-based inclusive cell coordinates
    std::vector<Coord> bbox_hi;
    double diameter = 0.0;       // Euclidean diameter of the union of closed boxes
};

/// Partition of retained cells under Chebyshev-1 adjacency (closed cubes
/// sharing any boundary point are connected). A single cell has diameter
/// sqrt(d) * N^-n: closed-box semantics, never zero.
class ComponentLabeling {
  public:
    const std::vector<ComponentInfo>& components() const { return components_; }
    std::size_t component_count() const { return components_.size(); }

    int level() const { return level_; }
    std::uint64_t side() const { return side_; }
    std::uint32_t dim() const { return d_; }

    /// Component id of a retained cell, or nullopt if the cell is not retained.
    std::optional<std::uint32_t> label_of(std::uint64_t packed_idx) const {
        auto it = std::lower_bound(cells_.begin(), cells_.end(), packed_idx);
        if (it == cells_.end() || *it != packed_idx) return std::nullopt;
        return labels_[static_cast<std::size_t>(it - cells_.begin())];
    }

    const std::vector<std::uint64_t>& sorted_cells() const { return cells_; }
    const std::vector<std::uint32_t>& labels() const { return labels_; }

    friend ComponentLabeling label_components(const LevelConfiguration& config);

  private:
    int level_ = 0;
    std::uint64_t side_ = 1;
    std::uint32_t d_ = 2;
    std::vector<std::uint64_t> cells_;   // sorted packed indices
    std::vector<std::uint32_t> labels_;  // parallel to cells_
    std::vector<ComponentInfo> components_;
};

ComponentLabeling label_components(const LevelConfiguration& config);

struct DustPartition {
    CellSet connected;        // cells in components of diameter >= epsilon
    CellSet dust_candidates;  // everything else at this resolution
    std::vector<bool> component_connected;  // per component id
};

/// Finite-level proxy of the dust/connected split: components of diameter
/// at least epsilon go to `connected`.
DustPartition dust_partition(const LevelConfiguration& config, const ComponentLabeling& labeling,
                             double epsilon);

}  // namespace fracperc
