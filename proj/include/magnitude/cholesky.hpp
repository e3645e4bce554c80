#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mag {

/// Cholesky factorization with diagonal pivoting, P^T A P = L L^T, of a
/// symmetric matrix given row-major. Factorization stops at the first pivot
/// at or below the tolerance; ok() is then false and rank() reports how many
/// pivots were accepted.
class PivotedCholesky {
 public:
  static constexpr double kPivotTolerance = 1e-12;

  PivotedCholesky(std::span<const double> a, std::size_t n, double tolerance = kPivotTolerance);

  bool ok() const { return rank_ == n_; }
  std::size_t size() const { return n_; }
  std::size_t rank() const { return rank_; }
  /// Smallest accepted pivot (squared diagonal of L), or the rejected one.
  double min_pivot() const { return min_pivot_; }

  /// Solves A x = b. Requires ok().
  std::vector<double> solve(std::span<const double> b) const;

  /// Hager/Higham estimate of the 1-norm condition number. Requires ok().
  double condition_estimate() const;

 private:
  std::size_t n_;
  std::size_t rank_ = 0;
  double min_pivot_ = 0.0;
  double norm1_ = 0.0;
  std::vector<double> l_;  // lower triangle, row-major
  std::vector<std::size_t> perm_;
};

}  // namespace mag
