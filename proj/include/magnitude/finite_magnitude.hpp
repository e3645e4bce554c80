#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "magnitude/core/metric_space.hpp"

namespace mag {

/// Z[i][j] = exp(-t * d(i, j)), row-major. Symmetric with unit diagonal.
class SimilarityMatrix {
 public:
  /// Wraps raw entries; checks symmetry, unit diagonal and entries in [0, 1].
  SimilarityMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return z_[i * n_ + j]; }
  std::span<const double> entries() const { return z_; }

 private:
  std::size_t n_;
  std::vector<double> z_;
};

SimilarityMatrix build_similarity(const FiniteMetricSpace& space, double t);

/// True iff pivoted Cholesky accepts every pivot above 1e-12.
bool is_positive_definite(const SimilarityMatrix& z);

struct Weighting {
  std::vector<double> w;
  /// max_i |(Z w)_i - 1|
  double residual = 0.0;
};

struct MagnitudeResult {
  double value = 0.0;
  Weighting weighting;
  double condition = 1.0;
  /// condition > kIllConditioned
  bool ill_conditioned = false;
  /// A pivot fell below 1e-12 and the minimum-norm least-squares weighting was used.
  bool least_squares = false;
};

inline constexpr double kIllConditioned = 1e12;

/// Magnitude of tX as the sum of the weighting solving Z w = 1. For a
/// positive-definite Z this equals the supremum of the Rayleigh quotient.
/// Throws NotPositiveDefinite when Z has a negative eigenvalue.
MagnitudeResult magnitude(const FiniteMetricSpace& space, double t);

/// (sum w)^2 / (w^T Z w); a lower bound for magnitude(space, t).
/// Throws ZeroQuadraticForm when the denominator vanishes.
double rayleigh_quotient(const FiniteMetricSpace& space, double t, std::span<const double> w);

struct MagnitudeSample {
  double t = 0.0;
  double magnitude = 0.0;
  double condition = 0.0;
  bool positive_definite = true;
  bool ill_conditioned = false;
  bool least_squares = false;
};

using MagnitudeFunctionSamples = std::vector<MagnitudeSample>;

/// Magnitude at each t of a strictly increasing positive grid. Scales at
/// which Z is not positive definite are flagged with magnitude = NaN.
MagnitudeFunctionSamples magnitude_function(const FiniteMetricSpace& space,
                                            std::span<const double> t_grid);

}  // namespace mag
