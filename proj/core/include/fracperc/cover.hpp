#pragma once

#include <cstdint>
#include <vector>

#include "fracperc/cellset.hpp"
#include "fracperc/components.hpp"
#include "fracperc/config.hpp"
#include "fracperc/crossing.hpp"

namespace fracperc {

/// Nested cover of the large-component set. W_m holds the level-m cells that
/// are retained and whose shell is crossed when every level below m is
/// treated as fully retained; V_n keeps the level-n cells whose whole
/// ancestor chain from level l down lies in the W sets.
struct CoverChain {
    ProcessParams params;
    int l = 1;
    int n = 1;
    double epsilon = 0.0;
    std::vector<std::vector<std::uint64_t>> w_sets;  // w_sets[m-l]: sorted, level-m grid
    CellSet v;

    const std::vector<std::uint64_t>& w(int m) const { return w_sets.at(m - l); }
};

CoverChain build_cover_chain(const ProcessParams& params, int n, double epsilon,
                             const GenerateOptions& opt = {});

/// Every retained cell of a component with diameter >= chain.epsilon lies in
/// V_n. Exact per realization.
bool cover_property_holds(const ComponentLabeling& labeling, const CoverChain& chain);

}  // namespace fracperc
