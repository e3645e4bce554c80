#include "magnitude/finite_magnitude.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "magnitude/cholesky.hpp"
#include "magnitude/core/errors.hpp"
#include "magnitude/core/parallel.hpp"
#include "magnitude/kernels/kernels.hpp"

namespace mag {

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), z_(std::move(entries)) {
  if (z_.size() != n_ * n_) throw InvalidArgument("similarity matrix must be n x n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (z_[i * n_ + i] != 1.0) throw InvalidArgument("similarity matrix must have unit diagonal");
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = z_[i * n_ + j];
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("similarity entries must lie in [0, 1]");
      if (v != z_[j * n_ + i]) throw InvalidArgument("similarity matrix must be symmetric");
    }
  }
}

SimilarityMatrix build_similarity(const FiniteMetricSpace& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("scale t must be positive");
  const std::size_t n = space.size();
  std::vector<double> z(n * n);
  const auto d = space.distances();
  for (std::size_t i = 0; i < n * n; ++i) z[i] = std::exp(-t * d[i]);
  return SimilarityMatrix(n, std::move(z));
}

bool is_positive_definite(const SimilarityMatrix& z) {
  return PivotedCholesky(z.entries(), z.size()).ok();
}

namespace {

double residual(const SimilarityMatrix& z, std::span<const double> w) {
  const std::size_t n = z.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = kernels::dot(z.entries().subspan(i * n, n), w);
    worst = std::max(worst, std::fabs(zi - 1.0));
  }
  return worst;
}

// Minimum-norm solution of Z w = 1 through the eigendecomposition. Rejects
// matrices with an eigenvalue below -tolerance * lambda_max.
std::vector<double> least_squares_weighting(const SimilarityMatrix& z, double& condition) {
  const auto n = static_cast<Eigen::Index>(z.size());
  const Eigen::Map<const Eigen::MatrixXd> m(z.entries().data(), n, n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  const double cutoff = PivotedCholesky::kPivotTolerance * std::max(1.0, top);
  if (lambda.minCoeff() < -cutoff)
    throw NotPositiveDefinite("similarity matrix has a negative eigenvalue (" +
                              std::to_string(lambda.minCoeff()) + ")");
  const Eigen::VectorXd proj = eig.eigenvectors().transpose() * Eigen::VectorXd::Ones(n);
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(n);
  double smallest_kept = top;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda(i) > cutoff) {
      scaled(i) = proj(i) / lambda(i);
      smallest_kept = std::min(smallest_kept, lambda(i));
    }
  }
  condition = lambda.minCoeff() > cutoff ? top / smallest_kept
                                         : std::numeric_limits<double>::infinity();
  const Eigen::VectorXd w = eig.eigenvectors() * scaled;
  return {w.data(), w.data() + n};
}

}  // namespace

MagnitudeResult magnitude(const FiniteMetricSpace& space, double t) {
  const SimilarityMatrix z = build_similarity(space, t);
  const std::size_t n = z.size();
  MagnitudeResult out;
  const PivotedCholesky chol(z.entries(), n);
  if (chol.ok()) {
    out.weighting.w = chol.solve(std::vector<double>(n, 1.0));
    out.condition = chol.condition_estimate();
  } else {
    out.weighting.w = least_squares_weighting(z, out.condition);
    out.least_squares = true;
  }
  out.ill_conditioned = !(out.condition <= kIllConditioned);
  out.weighting.residual = residual(z, out.weighting.w);
  for (double wi : out.weighting.w) out.value += wi;
  return out;
}

double rayleigh_quotient(const FiniteMetricSpace& space, double t, std::span<const double> w) {
  const std::size_t n = space.size();
  if (w.size() != n) throw InvalidArgument("rayleigh_quotient: weight vector has wrong length");
  const SimilarityMatrix z = build_similarity(space, t);
  double sum = 0.0;
  double form = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += w[i];
    form += w[i] * kernels::dot(z.entries().subspan(i * n, n), w);
  }
  if (!(std::fabs(form) > 0.0)) throw ZeroQuadraticForm("rayleigh_quotient: w^T Z w = 0");
  return sum * sum / form;
}

MagnitudeFunctionSamples magnitude_function(const FiniteMetricSpace& space,
                                            std::span<const double> t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw InvalidArgument("magnitude_function: t must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw InvalidArgument("magnitude_function: t grid must be strictly increasing");
  }
  MagnitudeFunctionSamples out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    MagnitudeSample& s = out[i];
    s.t = t_grid[i];
    try {
      const MagnitudeResult r = magnitude(space, s.t);
      s.magnitude = r.value;
      s.condition = r.condition;
      s.ill_conditioned = r.ill_conditioned;
      s.least_squares = r.least_squares;
    } catch (const NotPositiveDefinite&) {
      s.positive_definite = false;
      s.magnitude = std::numeric_limits<double>::quiet_NaN();
      s.condition = std::numeric_limits<double>::infinity();
    }
  });
  return out;
}

}  // namespace mag
