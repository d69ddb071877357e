#pragma once

#include <vector>

#include "fracperc/curve.hpp"

namespace fracperc {

/// Discrete Fréchet distance over the stored vertices (no subdivision).
double discrete_frechet(const Curve& a, const Curve& b);

/// Splits segments longer than max_segment; vertex set is a superset of the
/// original one.
Curve subdivide(const Curve& c, double max_segment);

/// Fréchet distance via discrete Fréchet on curves subdivided to h_sub;
/// within h_sub of the continuous value.
double frechet_distance(const Curve& a, const Curve& b, double h_sub);

/// Hausdorff metric over curve sets induced by the Fréchet distance:
/// max over one set of the min distance to the other, symmetrized.
double curve_set_distance(const std::vector<Curve>& F, const std::vector<Curve>& G, double h_sub);

}  // namespace fracperc
