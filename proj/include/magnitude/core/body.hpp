#pragma once

#include <string>
#include <variant>
#include <vector>

#include "magnitude/core/metric_space.hpp"

namespace mag {

struct Ball {
  int dim = 1;
  double radius = 1.0;
};

/// Axis-parallel box [0, a_1] x ... x [0, a_N].
struct Box {
  std::vector<double> edges;
};

/// Convex hull of a finite vertex list in R^dim.
struct Polytope {
  int dim = 1;
  PointCloud vertices;
};

/// Segment [0, length] in R^1.
struct Interval {
  double length = 1.0;
};

using ConvexBodySpec = std::variant<Ball, Box, Polytope, Interval>;

/// Throws InvalidArgument when a body violates its invariants.
void validate(const ConvexBodySpec& body);

int ambient_dim(const ConvexBodySpec& body);
std::string type_name(const ConvexBodySpec& body);

/// Vertex description of boxes, intervals and polytopes. Balls throw.
Polytope to_polytope(const ConvexBodySpec& body);

Polytope unit_cube(int dim);

}  // namespace mag
