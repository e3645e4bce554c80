#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "magnitude/core/random.hpp"
#include "magnitude/kernels/kernels.hpp"

using namespace mag;

namespace {

std::vector<double> random_vector(RandomStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("active table honours the environment override") {
  const char* env = std::getenv("MAGNITUDE_SIMD");
  const auto& t = kernels::active();
  if (env && std::string(env) == "scalar") {
    CHECK(t.name == "scalar");
  } else if (kernels::cpu_has_avx2() && kernels::avx2::table()) {
    CHECK(t.name == "avx2");
  }
  MESSAGE("active kernels: " << t.name);
}

TEST_CASE("scalar and avx2 kernels agree") {
  const auto* simd = kernels::avx2::table();
  if (!simd || !kernels::cpu_has_avx2()) {
    MESSAGE("no AVX2 on this machine");
    return;
  }
  const auto& ref = kernels::scalar::table();
  RandomStream rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 100u, 1001u}) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    CHECK(rel(simd->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)) < 1e-13 * (1 + n));
    CHECK(rel(simd->abs_sum(a.data(), n), ref.abs_sum(a.data(), n)) < 1e-13 * (1 + n));
    auto y1 = b, y2 = b;
    simd->axpy(0.37, a.data(), y1.data(), n);
    ref.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(y1[i], y2[i]) < 1e-14);
  }
  for (std::size_t dim : {1u, 2u, 3u, 4u, 5u, 9u}) {
    for (std::size_t count : {1u, 3u, 4u, 5u, 13u, 64u}) {
      const auto p = random_vector(rng, dim);
      const auto pts = random_vector(rng, dim * count);
      std::vector<double> o1(count), o2(count);
      simd->l2_distances(p.data(), pts.data(), count, dim, o1.data());
      ref.l2_distances(p.data(), pts.data(), count, dim, o2.data());
      for (std::size_t j = 0; j < count; ++j) CHECK(rel(o1[j], o2[j]) < 1e-14);
      simd->l1_distances(p.data(), pts.data(), count, dim, o1.data());
      ref.l1_distances(p.data(), pts.data(), count, dim, o2.data());
      for (std::size_t j = 0; j < count; ++j) CHECK(rel(o1[j], o2[j]) < 1e-14);
    }
  }
}

TEST_CASE("kernel values") {
  const std::vector<double> a{1, -2, 3, -4, 5};
  const std::vector<double> b{1, 1, 1, 1, 1};
  CHECK(kernels::dot(a, b) == 3.0);
  CHECK(kernels::abs_sum(a) == 15.0);
  std::vector<double> y(b);
  kernels::axpy(2.0, a, y);
  CHECK(y == std::vector<double>{3, -3, 7, -7, 11});
  const double p[2] = {0, 0};
  const double pts[4] = {3, 4, -1, 1};
  double out[2];
  kernels::active().l2_distances(p, pts, 2, 2, out);
  CHECK(out[0] == doctest::Approx(5.0));
  kernels::active().l1_distances(p, pts, 2, 2, out);
  CHECK(out[1] == doctest::Approx(2.0));
}
