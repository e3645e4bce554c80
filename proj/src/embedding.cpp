#include "magnitude/embedding.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "magnitude/core/errors.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/kernels/kernels.hpp"

namespace mag::embedding {

namespace {

const double kSqrtHalfPi = std::sqrt(std::numbers::pi / 2.0);

void check_shape(std::span<const double> y, int n, int cap_bits) {
  if (y.empty()) throw InvalidArgument("embedding: y must have dimension >= 1");
  if (n < 1 || n > 64) throw InvalidArgument("embedding: n must be in [1, 64]");
  const long bits = static_cast<long>(n) * static_cast<long>(y.size());
  if (bits > cap_bits)
    throw ResourceLimit("sign-pattern space has 2^" + std::to_string(bits) +
                        " points, exhaustive cap is 2^" + std::to_string(cap_bits));
}

double l2_norm(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

double project(std::span<const double> y, int n, std::uint64_t pattern) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int negatives = std::popcount((pattern >> (i * static_cast<std::size_t>(n))) & mask);
    s += y[i] * static_cast<double>(n - 2 * negatives) * inv_sqrt_n;
  }
  return s;
}

}  // namespace

double EmbeddedVector::l1_norm() const { return kernels::abs_sum(values); }

EmbeddedVector embed(std::span<const double> y, int n, Scaling scaling, int cap_bits) {
  check_shape(y, n, cap_bits);
  EmbeddedVector out{static_cast<int>(y.size()), n, scaling, {}};
  const std::size_t count = std::size_t{1} << (static_cast<std::size_t>(n) * y.size());
  out.values.resize(count);
  const double scale =
      scaling == Scaling::normalized ? kSqrtHalfPi / static_cast<double>(count) : 1.0;
  for (std::size_t x = 0; x < count; ++x) out.values[x] = scale * project(y, n, x);
  return out;
}

double distortion_ratio(std::span<const double> y, int n, int cap_bits) {
  const double norm = l2_norm(y);
  if (!(norm > 0.0)) throw InvalidArgument("distortion_ratio: y must be nonzero");
  return embed(y, n, Scaling::normalized, cap_bits).l1_norm() / norm;
}

DistortionBounds distortion_bounds(int n) {
  const double slack = 4.0 / std::sqrt(static_cast<double>(n));
  return {1.0 - slack, 1.0 + slack};
}

SampledRatio distortion_ratio_sampled(std::span<const double> y, int n, std::size_t samples,
                                      const RandomStream& rng) {
  if (y.empty() || n < 1 || n > 64) throw InvalidArgument("distortion_ratio_sampled: bad shape");
  if (samples == 0) throw InvalidArgument("distortion_ratio_sampled: need samples");
  const double norm = l2_norm(y);
  if (!(norm > 0.0)) throw InvalidArgument("distortion_ratio_sampled: y must be nonzero");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  RunningStats stats;
  for (std::size_t s = 0; s < samples; ++s) {
    RandomStream stream = rng.substream(s);
    double v = 0.0;
    for (double yi : y) v += yi * stream.rademacher_sum(n) * inv_sqrt_n;
    stats.add(std::fabs(v));
  }
  return {kSqrtHalfPi * stats.mean() / norm, kSqrtHalfPi * stats.standard_error() / norm};
}

double berry_esseen_budget(std::span<const double> y, int n) {
  if (n < 1) throw InvalidArgument("berry_esseen_budget: n must be positive");
  const double norm = l2_norm(y);
  if (std::fabs(norm - 1.0) > 1e-9) throw InvalidArgument("berry_esseen_budget: y must be a unit vector");
  double cubes = 0.0;
  for (double v : y) cubes += std::fabs(v * v * v);
  return 3.0 / std::sqrt(static_cast<double>(n)) * cubes;
}

void rademacher_matrix(RandomStream& rng, int d, int k, int n, std::span<double> out) {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < d * k; ++i) out[static_cast<std::size_t>(i)] = rng.rademacher_sum(n) * inv_sqrt_n;
}

namespace {
double limit_constant(int k) { return std::pow(std::numbers::pi / 2.0, 0.5 * k) / factorial_d(k); }

void check_args(const Polytope& body, int k) {
  validate(ConvexBodySpec{body});
  if (k > kMaxProjectionDim)
    throw DimensionTooLarge("projection estimators support k <= 3, got k = " + std::to_string(k));
  if (k < 0 || k > body.dim) throw InvalidArgument("need 0 <= k <= dim");
}
}  // namespace

IntrinsicVolumeEstimate estimate_vk_prime(const Polytope& body, int k, int n, std::size_t samples,
                                          const RandomStream& rng) {
  check_args(body, k);
  if (n < 1 || n > 64) throw InvalidArgument("estimate_vk_prime: n must be in [1, 64]");
  if (k == 0) return {0, 1.0, 0.0, EstimateMethod::exact, 0};
  const auto sampler = [n](RandomStream& s, int d, int kk, std::span<double> m) {
    rademacher_matrix(s, d, kk, n, m);
  };
  const RunningStats st = projected_volume_stats(body, k, samples, rng, sampler);
  const double c = limit_constant(k);
  return {k, c * st.mean(), c * st.standard_error(), EstimateMethod::rademacher_mc, samples};
}

IntrinsicVolumeEstimate gaussian_limit_reference(const Polytope& body, int k, std::size_t samples,
                                                 const RandomStream& rng) {
  check_args(body, k);
  if (k == 0) return {0, 1.0, 0.0, EstimateMethod::exact, 0};
  const auto sampler = [](RandomStream& s, int d, int kk, std::span<double> m) {
    for (int i = 0; i < d * kk; ++i) m[static_cast<std::size_t>(i)] = s.normal();
  };
  const RunningStats st = projected_volume_stats(body, k, samples, rng, sampler);
  const double c = limit_constant(k);
  return {k, c * st.mean(), c * st.standard_error(), EstimateMethod::tsirelson_mc, samples};
}

std::vector<ConvergenceRow> convergence_table(const Polytope& body, int k, std::span<const int> ns,
                                              std::size_t samples, const RandomStream& rng,
                                              double target, double target_std_error) {
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    const RandomStream stream = rng.fork(static_cast<std::uint64_t>(n));
    const auto e = estimate_vk_prime(body, k, n, samples, stream);
    rows.push_back({n, e.value, e.std_error, target, target_std_error});
  }
  return rows;
}

}  // namespace mag::embedding
