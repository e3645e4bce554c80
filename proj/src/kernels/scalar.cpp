#include <cmath>

#include "magnitude/kernels/kernels.hpp"

namespace mag::kernels::scalar {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double abs_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

void l2_distances(const double* p, const double* points, std::size_t count, std::size_t dim,
                  double* out) {
  for (std::size_t j = 0; j < count; ++j) {
    const double* q = points + j * dim;
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = p[c] - q[c];
      s += diff * diff;
    }
    out[j] = std::sqrt(s);
  }
}

void l1_distances(const double* p, const double* points, std::size_t count, std::size_t dim,
                  double* out) {
  for (std::size_t j = 0; j < count; ++j) {
    const double* q = points + j * dim;
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += std::fabs(p[c] - q[c]);
    out[j] = s;
  }
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"scalar", dot, axpy, abs_sum, l2_distances, l1_distances};
  return t;
}

}  // namespace mag::kernels::scalar
