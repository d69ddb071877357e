#include "fracperc/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fracperc {

namespace {

// y flips: SVG grows downward, the unit square grows upward
double flip(double y, int canvas) { return canvas - y; }

}  // namespace

std::string render_svg(const LevelConfiguration* config, const InterfaceSet* interfaces,
                       const Curve* highlight, const SvgOptions& opt) {
    std::ostringstream svg;
    const int C = opt.canvas;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << C << "\" height=\"" << C
        << "\" viewBox=\"0 0 " << C << ' ' << C << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << C << "\" height=\"" << C
        << "\" fill=\"#ffffff\" stroke=\"#999999\"/>\n";

    if (config && opt.draw_cells && config->params().d == 2) {
        double h = static_cast<double>(C) / static_cast<double>(config->side());
        svg << "<g fill=\"" << opt.cell_fill << "\">\n";
        std::vector<Coord> k(2);
        config->for_each_packed([&](std::uint64_t idx) {
            config->unpack(idx, k);
            double x = (k[0] - 1) * h;
            double y = flip(static_cast<double>(k[1]) * h, C);
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << h << "\" height=\""
                << h << "\"/>\n";
        });
        svg << "</g>\n";
    }

    if (interfaces) {
        double h = static_cast<double>(C) / static_cast<double>(interfaces->side);
        svg << "<g fill=\"none\" stroke=\"" << opt.loop_stroke << "\" stroke-width=\"1.5\">\n";
        for (const auto& loop : interfaces->loops) {
            svg << "<path d=\"";
            for (std::size_t i = 0; i < loop.verts.size(); ++i) {
                const auto& v = loop.verts[i];
                svg << (i == 0 ? 'M' : 'L') << v[0] * h << ' ' << flip(v[1] * h, C) << ' ';
            }
            svg << "Z\"/>\n";
            if (opt.draw_arrows && loop.verts.size() >= 2) {
                // one arrowhead per loop at the first edge midpoint
                const auto& a = loop.verts[0];
                const auto& b = loop.verts[1];
                double mx = 0.5 * (a[0] + b[0]) * h, my = flip(0.5 * (a[1] + b[1]) * h, C);
                double dx = (b[0] - a[0]) * h, dy = -(b[1] - a[1]) * h;
                double len = std::max(1e-9, std::hypot(dx, dy));
                dx /= len;
                dy /= len;
                double s = 5.0;
                svg << "<path d=\"M" << mx << ' ' << my << " L" << mx - s * dx - s * 0.5 * dy
                    << ' ' << my - s * dy + s * 0.5 * dx << " L" << mx - s * dx + s * 0.5 * dy
                    << ' ' << my - s * dy - s * 0.5 * dx << " Z\" fill=\"" << opt.loop_stroke
                    << "\" stroke=\"none\"/>\n";
            }
        }
        svg << "</g>\n";
    }

    if (highlight && !highlight->pts.empty()) {
        svg << "<path fill=\"none\" stroke=\"" << opt.highlight_stroke
            << "\" stroke-width=\"3\" d=\"";
        for (std::size_t i = 0; i < highlight->pts.size(); ++i) {
            const auto& p = highlight->pts[i];
            svg << (i == 0 ? 'M' : 'L') << p.x * C << ' ' << flip(p.y * C, C) << ' ';
        }
        svg << "\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const std::string& svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot write " + path);
    out << svg;
}

}  // namespace fracperc
