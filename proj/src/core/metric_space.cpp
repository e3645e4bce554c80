#include "magnitude/core/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magnitude/core/errors.hpp"
#include "magnitude/kernels/kernels.hpp"

namespace mag {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 && !coords_.empty()) throw InvalidArgument("point cloud: zero dimension");
  if (dim_ != 0 && coords_.size() % dim_ != 0)
    throw InvalidArgument("point cloud: coordinate count is not a multiple of the dimension");
  for (double c : coords_)
    if (!std::isfinite(c)) throw InvalidArgument("point cloud: non-finite coordinate");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  PointCloud pc;
  pc.dim_ = rows.front().size();
  for (const auto& r : rows) pc.push_back(r);
  return pc;
}

void PointCloud::push_back(std::span<const double> p) {
  if (dim_ == 0) dim_ = p.size();
  if (p.size() != dim_ || dim_ == 0) throw InvalidArgument("point cloud: inconsistent point dimension");
  for (double c : p)
    if (!std::isfinite(c)) throw InvalidArgument("point cloud: non-finite coordinate");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist, Options options)
    : n_(n), dist_(std::move(dist)) {
  if (n_ == 0) throw InvalidArgument("metric space must have at least one point");
  if (dist_.size() != n_ * n_) throw InvalidArgument("distance matrix must be n x n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist_[i * n_ + i] != 0.0) throw InvalidArgument("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double a = dist_[i * n_ + j];
      const double b = dist_[j * n_ + i];
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
        throw InvalidArgument("distances must be finite and nonnegative");
      if (std::fabs(a - b) > 1e-12 * std::max(1.0, std::max(a, b)))
        throw InvalidArgument("distance matrix is not symmetric");
      if (a == 0.0)
        throw InvalidArgument("duplicate points " + std::to_string(i) + " and " + std::to_string(j));
      dist_[j * n_ + i] = a;
    }
  }
  if (!options.check_triangle) return;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (dist_[i * n_ + k] > dist_[i * n_ + j] + dist_[j * n_ + k] + options.triangle_tolerance)
          throw InvalidArgument("triangle inequality fails at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ", " + std::to_string(k) + ")");
}

FiniteMetricSpace::FiniteMetricSpace(Trusted, std::size_t n, std::vector<double> dist)
    : n_(n), dist_(std::move(dist)) {}

FiniteMetricSpace FiniteMetricSpace::from_points(const PointCloud& points, Metric metric) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("metric space must have at least one point");
  const auto& k = kernels::active();
  const auto fill = metric == Metric::l2 ? k.l2_distances : k.l1_distances;
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    fill(points.point(i).data(), points.coords().data(), n, points.dim(), dist.data() + i * n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i * n + j] == 0.0)
        throw InvalidArgument("duplicate points " + std::to_string(i) + " and " + std::to_string(j));
      dist[j * n + i] = dist[i * n + j];
    }
  }
  return FiniteMetricSpace(Trusted{}, n, std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> indices) const {
  const std::size_t m = indices.size();
  if (m == 0) throw InvalidArgument("subspace must be nonempty");
  std::vector<std::size_t> seen(indices.begin(), indices.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() || seen.back() >= n_)
    throw InvalidArgument("subspace indices must be distinct and in range");
  std::vector<double> dist(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) dist[a * m + b] = distance(indices[a], indices[b]);
  return FiniteMetricSpace(Trusted{}, m, std::move(dist));
}

}  // namespace mag
