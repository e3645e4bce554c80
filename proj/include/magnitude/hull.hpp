#pragma once

#include <array>
#include <vector>

#include "magnitude/core/body.hpp"
#include "magnitude/core/metric_space.hpp"

namespace mag {

/// Volume of the convex hull of points in R^k for k in {1, 2, 3}:
/// extent for k = 1, area for k = 2, volume for k = 3. Degenerate input gives 0.
/// Throws DimensionTooLarge for k > 3.
double hull_volume(const PointCloud& points);

/// Counter-clockwise hull vertices with collinear points removed.
std::vector<std::array<double, 2>> convex_hull_2d(const PointCloud& points);

struct Triangle {
  std::array<double, 3> a, b, c;
};

/// Outward-oriented triangulated boundary of a 3D hull; empty when the points
/// do not span R^3.
std::vector<Triangle> convex_hull_3d(const PointCloud& points);

/// { x : normal . x <= offset } with a unit normal.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

/// Facet inequalities of a full-dimensional polytope of dimension 1 to 3.
/// Throws InvalidArgument for a degenerate polytope and DimensionTooLarge above 3.
std::vector<Halfspace> halfspaces(const Polytope& polytope);

bool contains(const std::vector<Halfspace>& facets, std::span<const double> x, double tolerance = 1e-12);

}  // namespace mag
