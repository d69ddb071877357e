#pragma once

#include "fracperc/config.hpp"
#include "fracperc/geometry.hpp"
#include "fracperc/interface.hpp"

namespace fracperc {

/// Square annulus A(x;r,R) = B(x,R) \ B°(x,r): closed squares of side r and
/// R centered at x, clipped to the unit square when they stick out.
struct AnnulusSpec {
    Vec2 center;
    double r = 0.25;  // inner side length
    double R = 0.5;   // outer side length

    void validate() const {
        if (!(r > 0 && r < R)) throw std::invalid_argument("annulus: needs 0 < r < R");
    }
    /// l-infinity distance from the centre, doubled (compares against side lengths).
    double linf2(Vec2 p) const { return 2.0 * linf(p - center); }
};

/// Number of disjoint sub-arcs of loops in F connecting the inner boundary
/// to the outer boundary inside the annulus. Arcs come from clipping loops
/// at boundary touches; loops are edge-disjoint so arcs are disjoint.
int annulus_interface_crossings(const InterfaceSet& F, const AnnulusSpec& a);

/// Maximum number of vertex-disjoint retained-cell paths (Chebyshev
/// adjacency) from the inner boundary to the outer boundary: a unit
/// vertex-capacity max-flow over the cells meeting the annulus.
int annulus_black_crossings(const LevelConfiguration& config, const AnnulusSpec& a);

/// Number of disjoint interface arcs crossing `rect` in the direction of
/// `axis` (arcs stay inside the closed rectangle and join its two short
/// sides). Used by the well-separated-rectangles experiment.
int rect_interface_crossings(const InterfaceSet& F, const Rect& rect, int axis);

/// Tile index over the loop edges of one interface set, built once per
/// realization so that many annuli can be counted cheaply. Only edges near
/// the two boundary contours can change the touch sequence, so each query
/// walks the edges in those bands in loop order.
class AnnulusCrossingIndex {
  public:
    explicit AnnulusCrossingIndex(const InterfaceSet& F, double tile_size = 0.0);

    int count(const AnnulusSpec& a) const;

  private:
    const InterfaceSet* set_;
    double h_;
    double tile_;
    int tiles_;
    // per tile: (loop, edge position) pairs in trace order
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets_;
};

}  // namespace fracperc
