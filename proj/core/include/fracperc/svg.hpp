#pragma once

#include <optional>
#include <string>

#include "fracperc/config.hpp"
#include "fracperc/curve.hpp"
#include "fracperc/interface.hpp"

namespace fracperc {

struct SvgOptions {
    int canvas = 800;           // pixels per unit square
    bool draw_cells = true;
    bool draw_arrows = true;    // orientation arrowheads on loops
    std::string cell_fill = "#222222";
    std::string loop_stroke = "#d62728";
    std::string highlight_stroke = "#1f77b4";
};

/// Black cells, interface loops with orientation arrows, and an optional
/// highlighted curve, as a standalone SVG document.
std::string render_svg(const LevelConfiguration* config, const InterfaceSet* interfaces,
                       const Curve* highlight, const SvgOptions& opt = {});

void write_svg(const std::string& path, const std::string& svg);

}  // namespace fracperc
