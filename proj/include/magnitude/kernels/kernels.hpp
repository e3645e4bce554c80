#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version; the active set is picked once at runtime.
// Set MAGNITUDE_SIMD=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace mag::kernels {

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*abs_sum)(const double* x, std::size_t n);
  /// out[j] = ||p - points[j]||_2 for j < count; points is count x dim row-major.
  void (*l2_distances)(const double* p, const double* points, std::size_t count, std::size_t dim,
                       double* out);
  /// out[j] = ||p - points[j]||_1
  void (*l1_distances)(const double* p, const double* points, std::size_t count, std::size_t dim,
                       double* out);
};

namespace scalar {
const KernelTable& table();
}
namespace avx2 {
/// Null when the binary was built without x86 intrinsics.
const KernelTable* table();
}

/// True when the CPU reports AVX2 and FMA.
bool cpu_has_avx2();

/// The table selected for this process.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double abs_sum(std::span<const double> x) { return active().abs_sum(x.data(), x.size()); }

}  // namespace mag::kernels
