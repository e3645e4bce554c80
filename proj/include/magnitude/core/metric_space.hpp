#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mag {

enum class Metric { l1, l2 };

/// Points of R^dim stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords);
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const { return coords_; }

  void push_back(std::span<const double> p);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Finite metric space given by a symmetric distance matrix over distinct points.
/// Immutable after construction.
class FiniteMetricSpace {
 public:
  struct Options {
    bool check_triangle = true;
    double triangle_tolerance = 1e-9;
  };

  /// dist is n x n row-major. Throws InvalidArgument on asymmetry, a nonzero
  /// diagonal, a zero off-diagonal entry (duplicate point), or a triangle
  /// inequality violation beyond tolerance.
  FiniteMetricSpace(std::size_t n, std::vector<double> dist, Options options);
  FiniteMetricSpace(std::size_t n, std::vector<double> dist)
      : FiniteMetricSpace(n, std::move(dist), Options{}) {}

  /// Distances induced by the l1 or l2 norm. The triangle inequality holds by
  /// construction, so the cubic check is not run.
  static FiniteMetricSpace from_points(const PointCloud& points, Metric metric);

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {dist_.data() + i * n_, n_}; }
  std::span<const double> distances() const { return dist_; }

  /// Subspace on the listed points, in the listed order.
  FiniteMetricSpace subspace(std::span<const std::size_t> indices) const;

 private:
  struct Trusted {};
  FiniteMetricSpace(Trusted, std::size_t n, std::vector<double> dist);

  std::size_t n_ = 0;
  std::vector<double> dist_;
};

}  // namespace mag
