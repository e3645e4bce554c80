#include "magnitude/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cmath>

#define MAG_AVX2 __attribute__((target("avx2,fma")))

namespace mag::kernels::avx2 {

namespace {

MAG_AVX2 double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

MAG_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

MAG_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

MAG_AVX2 double abs_sum(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

// Four points per iteration; coordinates are gathered across the stride.
MAG_AVX2 void l2_distances(const double* p, const double* points, std::size_t count,
                           std::size_t dim, double* out) {
  const auto stride = static_cast<long long>(dim);
  const __m256i idx = _mm256_set_epi64x(3 * stride, 2 * stride, stride, 0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const double* base = points + j * dim;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < dim; ++c) {
      const __m256d q = _mm256_i64gather_pd(base + c, idx, 8);
      const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(p[c]), q);
      acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(acc));
  }
  for (; j < count; ++j) {
    const double* q = points + j * dim;
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
    out[j] = std::sqrt(s);
  }
}

MAG_AVX2 void l1_distances(const double* p, const double* points, std::size_t count,
                           std::size_t dim, double* out) {
  const auto stride = static_cast<long long>(dim);
  const __m256i idx = _mm256_set_epi64x(3 * stride, 2 * stride, stride, 0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const double* base = points + j * dim;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < dim; ++c) {
      const __m256d q = _mm256_i64gather_pd(base + c, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_set1_pd(p[c]), q)));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < count; ++j) {
    const double* q = points + j * dim;
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += std::fabs(p[c] - q[c]);
    out[j] = s;
  }
}

}  // namespace

const KernelTable* table() {
  static const KernelTable t{"avx2", dot, axpy, abs_sum, l2_distances, l1_distances};
  return &t;
}

}  // namespace mag::kernels::avx2

#else

namespace mag::kernels::avx2 {
const KernelTable* table() { return nullptr; }
}  // namespace mag::kernels::avx2

#endif
