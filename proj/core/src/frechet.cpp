#include "fracperc/frechet.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracperc {

double discrete_frechet(const Curve& a, const Curve& b) {
    if (a.pts.empty() || b.pts.empty()) throw std::invalid_argument("frechet: empty curve");
    const auto& p = a.pts;
    const auto& q = b.pts;
    const std::size_t m = p.size(), n = q.size();

    // rolling rows of the coupling DP
    std::vector<double> prev(n), cur(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = dist(p[0], q[j]);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (std::size_t i = 1; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = dist(p[i], q[j]);
            double reach;
            if (j == 0)
                reach = prev[0];
            else
                reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(reach, d);
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

Curve subdivide(const Curve& c, double max_segment) {
    if (c.pts.empty()) throw std::invalid_argument("subdivide: empty curve");
    if (!(max_segment > 0)) throw std::invalid_argument("subdivide: step must be > 0");
    Curve out;
    out.pts.push_back(c.pts.front());
    for (std::size_t i = 1; i < c.pts.size(); ++i) {
        Vec2 a = c.pts[i - 1], b = c.pts[i];
        double len = dist(a, b);
        int pieces = std::max(1, static_cast<int>(std::ceil(len / max_segment)));
        for (int k = 1; k <= pieces; ++k)
            out.pts.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
    }
    return out;
}

double frechet_distance(const Curve& a, const Curve& b, double h_sub) {
    return discrete_frechet(subdivide(a, h_sub), subdivide(b, h_sub));
}

double curve_set_distance(const std::vector<Curve>& F, const std::vector<Curve>& G, double h_sub) {
    if (F.empty() || G.empty()) throw std::invalid_argument("curve set distance: empty set");
    auto one_sided = [&](const std::vector<Curve>& from, const std::vector<Curve>& to) {
        double worst = 0;
        for (const auto& f : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& g : to) best = std::min(best, frechet_distance(f, g, h_sub));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(F, G), one_sided(G, F));
}

}  // namespace fracperc
