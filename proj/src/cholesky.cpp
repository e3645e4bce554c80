#include "magnitude/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "magnitude/core/errors.hpp"
#include "magnitude/kernels/kernels.hpp"

namespace mag {

PivotedCholesky::PivotedCholesky(std::span<const double> a, std::size_t n, double tolerance)
    : n_(n), l_(a.begin(), a.end()), perm_(n) {
  if (a.size() != n * n) throw InvalidArgument("cholesky: matrix must be n x n");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i * n + j]);
    norm1_ = std::max(norm1_, s);
  }

  const auto& k = kernels::active();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
  min_pivot_ = std::numeric_limits<double>::infinity();

  auto at = [&](std::size_t r, std::size_t c) -> double& { return l_[r * n + c]; };

  for (std::size_t j = 0; j < n; ++j) {
    const auto best = std::max_element(diag.begin() + static_cast<long>(j), diag.end());
    const std::size_t p = static_cast<std::size_t>(best - diag.begin());
    if (p != j) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(j, c), at(p, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(at(r, j), at(r, p));
      std::swap(diag[j], diag[p]);
      std::swap(perm_[j], perm_[p]);
    }
    const double pivot = diag[j];
    min_pivot_ = std::min(min_pivot_, pivot);
    if (!(pivot > tolerance)) return;
    const double ljj = std::sqrt(pivot);
    at(j, j) = ljj;
    const double* row_j = &l_[j * n];
    for (std::size_t i = j + 1; i < n; ++i) {
      double* row_i = &l_[i * n];
      const double v = (row_i[j] - k.dot(row_i, row_j, j)) / ljj;
      row_i[j] = v;
      diag[i] -= v * v;
    }
    rank_ = j + 1;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) at(r, c) = 0.0;
}

std::vector<double> PivotedCholesky::solve(std::span<const double> b) const {
  if (!ok()) throw NotPositiveDefinite("cholesky: factorization is incomplete");
  if (b.size() != n_) throw InvalidArgument("cholesky: right-hand side has wrong length");
  const auto& k = kernels::active();
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &l_[i * n_];
    y[i] = (b[perm_[i]] - k.dot(row, y.data(), i)) / row[i];
  }
  // L^T x = y, column-oriented so each update is a contiguous row of L.
  for (std::size_t i = n_; i-- > 0;) {
    const double* row = &l_[i * n_];
    y[i] /= row[i];
    k.axpy(-y[i], row, y.data(), i);
  }
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

double PivotedCholesky::condition_estimate() const {
  if (!ok()) return std::numeric_limits<double>::infinity();
  if (n_ == 0) return 1.0;
  std::vector<double> x(n_, 1.0 / static_cast<double>(n_));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<double> y = solve(x);
    const double norm = kernels::active().abs_sum(y.data(), n_);
    if (iter > 0 && norm <= estimate) break;
    estimate = norm;
    std::vector<double> xi(n_);
    for (std::size_t i = 0; i < n_; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = solve(xi);  // A is symmetric
    std::size_t jmax = 0;
    for (std::size_t i = 1; i < n_; ++i)
      if (std::fabs(z[i]) > std::fabs(z[jmax])) jmax = i;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n_; ++i) ztx += z[i] * x[i];
    if (std::fabs(z[jmax]) <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  // alternating test vector, catches null directions orthogonal to the ones vector
  if (n_ > 1) {
    std::vector<double> b(n_);
    for (std::size_t i = 0; i < n_; ++i)
      b[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(n_ - 1));
    const std::vector<double> y = solve(b);
    estimate = std::max(estimate, 2.0 * kernels::active().abs_sum(y.data(), n_) / (3.0 * static_cast<double>(n_)));
  }
  return norm1_ * estimate;
}

}  // namespace mag
