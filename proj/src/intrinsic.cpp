#include "magnitude/intrinsic.hpp"

#include <cmath>
#include <numbers>

#include "magnitude/core/errors.hpp"
#include "magnitude/core/parallel.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/hull.hpp"

namespace mag {

std::string_view to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::exact: return "exact";
    case EstimateMethod::kubota_mc: return "kubota_mc";
    case EstimateMethod::tsirelson_mc: return "tsirelson_mc";
    case EstimateMethod::rademacher_mc: return "rademacher_mc";
    case EstimateMethod::af_bound: return "af_bound";
  }
  return "unknown";
}

IntrinsicVolumeEstimate ball_intrinsic_volume(int d, int k, double r) {
  if (d < 1 || k < 0 || k > d) throw InvalidArgument("ball_intrinsic_volume: need 0 <= k <= d");
  if (!(r > 0.0)) throw InvalidArgument("ball_intrinsic_volume: radius must be positive");
  const double v = k == 0 ? 1.0 : binomial(d, k) * omega(d) / omega(d - k) * std::pow(r, k);
  return {k, v, 0.0, EstimateMethod::exact, 0};
}

Rational ball_v1_odd(unsigned m) {
  const Rational x = Rational(static_cast<long>(2 * m) - 1, 2);
  return Rational(2) / half_binomial(x, m);
}

std::vector<double> elementary_symmetric(std::span<const double> values) {
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += values[i] * e[k - 1];
  return e;
}

std::vector<IntrinsicVolumeEstimate> box_intrinsic_volumes(std::span<const double> edges) {
  if (edges.empty()) throw InvalidArgument("box_intrinsic_volumes: need at least one edge");
  for (double a : edges)
    if (!(a > 0.0)) throw InvalidArgument("box_intrinsic_volumes: edges must be positive");
  const auto e = elementary_symmetric(edges);
  std::vector<IntrinsicVolumeEstimate> out;
  for (std::size_t k = 0; k < e.size(); ++k)
    out.push_back({static_cast<int>(k), e[k], 0.0, EstimateMethod::exact, 0});
  return out;
}

namespace {

void check_projection_args(const Polytope& body, int k) {
  validate(ConvexBodySpec{body});
  if (k > kMaxProjectionDim)
    throw DimensionTooLarge("projection estimators support k <= 3, got k = " + std::to_string(k));
  if (k < 1 || k > body.dim)
    throw InvalidArgument("projection estimators need 1 <= k <= dim");
}

void gaussian_matrix(RandomStream& rng, int d, int k, std::span<double> m) {
  for (int i = 0; i < d * k; ++i) m[static_cast<std::size_t>(i)] = rng.normal();
}

// Gaussian columns, then modified Gram-Schmidt. The columns of a d x k
// Gaussian matrix are almost surely independent; a rare rank deficit is
// redrawn.
void orthonormal_frame(RandomStream& rng, int d, int k, std::span<double> m) {
  for (;;) {
    gaussian_matrix(rng, d, k, m);
    bool independent = true;
    for (int c = 0; c < k && independent; ++c) {
      for (int prev = 0; prev < c; ++prev) {
        double proj = 0.0;
        for (int r = 0; r < d; ++r) proj += m[r * k + c] * m[r * k + prev];
        for (int r = 0; r < d; ++r) m[r * k + c] -= proj * m[r * k + prev];
      }
      double norm = 0.0;
      for (int r = 0; r < d; ++r) norm += m[r * k + c] * m[r * k + c];
      norm = std::sqrt(norm);
      if (!(norm > 1e-12)) {
        independent = false;
        break;
      }
      for (int r = 0; r < d; ++r) m[r * k + c] /= norm;
    }
    if (independent) return;
  }
}

constexpr std::size_t kBlocks = 64;

}  // namespace

RunningStats projected_volume_stats(const Polytope& body, int k, std::size_t samples,
                                    const RandomStream& rng, const MatrixSampler& sampler) {
  if (samples == 0) throw InvalidArgument("Monte Carlo estimators need at least one sample");
  const int d = body.dim;
  const std::size_t nv = body.vertices.size();
  const std::size_t blocks = std::min(kBlocks, samples);
  std::vector<RunningStats> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t begin = samples * b / blocks;
    const std::size_t end = samples * (b + 1) / blocks;
    std::vector<double> m(static_cast<std::size_t>(d * k));
    std::vector<double> projected(nv * static_cast<std::size_t>(k));
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream stream = rng.substream(i);
      sampler(stream, d, k, m);
      for (std::size_t v = 0; v < nv; ++v) {
        const auto x = body.vertices.point(v);
        for (int c = 0; c < k; ++c) {
          double s = 0.0;
          for (int r = 0; r < d; ++r) s += m[static_cast<std::size_t>(r * k + c)] * x[static_cast<std::size_t>(r)];
          projected[v * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)] = s;
        }
      }
      partial[b].add(hull_volume(PointCloud(static_cast<std::size_t>(k), projected)));
    }
  });
  RunningStats total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

IntrinsicVolumeEstimate kubota_mc(const Polytope& body, int k, std::size_t samples,
                                  const RandomStream& rng) {
  check_projection_args(body, k);
  const int d = body.dim;
  const double c = binomial(d, k) * omega(d) / (omega(k) * omega(d - k));
  const RunningStats s = projected_volume_stats(body, k, samples, rng, orthonormal_frame);
  return {k, c * s.mean(), c * s.standard_error(), EstimateMethod::kubota_mc, samples};
}

IntrinsicVolumeEstimate tsirelson_mc(const Polytope& body, int k, std::size_t samples,
                                     const RandomStream& rng) {
  check_projection_args(body, k);
  const double c = std::pow(2.0 * std::numbers::pi, 0.5 * k) / (omega(k) * factorial_d(k));
  const RunningStats s = projected_volume_stats(body, k, samples, rng, gaussian_matrix);
  return {k, c * s.mean(), c * s.standard_error(), EstimateMethod::tsirelson_mc, samples};
}

namespace {

// vol_k(M^T (r B^d)) = omega_k r^k sqrt(det(M^T M)) for a d x k matrix M.
IntrinsicVolumeEstimate ball_projection_mc(const Ball& body, int k, std::size_t samples, const RandomStream& rng,
                                           const MatrixSampler& sampler, double c, EstimateMethod method) {
  validate(body);
  if (k < 1 || k > body.dim) throw InvalidArgument("projection estimators need 1 <= k <= dim");
  if (samples == 0) throw InvalidArgument("Monte Carlo estimators need at least one sample");
  const int d = body.dim;
  const double unit = omega(k) * std::pow(body.radius, k);
  const std::size_t blocks = std::min(kBlocks, samples);
  std::vector<RunningStats> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t begin = samples * b / blocks;
    const std::size_t end = samples * (b + 1) / blocks;
    const auto kk = static_cast<std::size_t>(k);
    std::vector<double> m(static_cast<std::size_t>(d) * kk);
    std::vector<double> g(kk * kk);
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream stream = rng.substream(i);
      sampler(stream, d, k, m);
      for (std::size_t a = 0; a < kk; ++a)
        for (std::size_t e = 0; e < kk; ++e) {
          double s = 0.0;
          for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r) s += m[r * kk + a] * m[r * kk + e];
          g[a * kk + e] = s;
        }
      // Cholesky of the Gram matrix; det is the product of squared pivots
      double det = 1.0;
      for (std::size_t j = 0; j < kk; ++j) {
        double p = g[j * kk + j];
        for (std::size_t q = 0; q < j; ++q) p -= g[j * kk + q] * g[j * kk + q];
        if (!(p > 0.0)) {
          det = 0.0;
          break;
        }
        det *= p;
        const double l = std::sqrt(p);
        g[j * kk + j] = l;
        for (std::size_t r = j + 1; r < kk; ++r) {
          double s = g[r * kk + j];
          for (std::size_t q = 0; q < j; ++q) s -= g[r * kk + q] * g[j * kk + q];
          g[r * kk + j] = s / l;
        }
      }
      partial[b].add(unit * std::sqrt(det));
    }
  });
  RunningStats total;
  for (const auto& p : partial) total.merge(p);
  return {k, c * total.mean(), c * total.standard_error(), method, samples};
}

}  // namespace

IntrinsicVolumeEstimate kubota_mc(const Ball& body, int k, std::size_t samples, const RandomStream& rng) {
  const int d = body.dim;
  const double c = binomial(d, k) * omega(d) / (omega(k) * omega(d - k));
  return ball_projection_mc(body, k, samples, rng, orthonormal_frame, c, EstimateMethod::kubota_mc);
}

IntrinsicVolumeEstimate tsirelson_mc(const Ball& body, int k, std::size_t samples, const RandomStream& rng) {
  const double c = std::pow(2.0 * std::numbers::pi, 0.5 * k) / (omega(k) * factorial_d(k));
  return ball_projection_mc(body, k, samples, rng, gaussian_matrix, c, EstimateMethod::tsirelson_mc);
}

L1IntrinsicVolumes l1_intrinsic_volumes(std::span<const double> edges) {
  if (edges.empty()) throw InvalidArgument("l1_intrinsic_volumes: need at least one edge");
  for (double a : edges)
    if (!(a >= 0.0)) throw InvalidArgument("l1_intrinsic_volumes: edges must be nonnegative");
  return {elementary_symmetric(edges)};
}

L1BoxMagnitude l1_box_magnitude(std::span<const double> edges) {
  if (edges.empty()) throw InvalidArgument("l1_box_magnitude: need at least one edge");
  for (double a : edges)
    if (!(a > 0.0) || !std::isfinite(a))
      throw InvalidArgument("l1_box_magnitude: edges must be positive (nonempty interior)");

  const Rational half(1, 2);
  Rational product(1);
  std::vector<Rational> e(edges.size() + 1);
  e[0] = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Rational a(mpq_class(edges[i]));
    product *= Rational(1) + a * half;
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += a * e[k - 1];
  }
  Rational weighted;
  Rational scale(1);
  for (const auto& ek : e) {
    weighted += scale * ek;
    scale *= half;
  }
  if (weighted != product)
    throw AssertionFailure("l1_box_magnitude: product " + product.str() + " != weighted sum " +
                           weighted.str());

  L1BoxMagnitude out;
  out.exact = product;
  out.magnitude = 1.0;
  for (double a : edges) out.magnitude *= 1.0 + 0.5 * a;
  const auto ed = elementary_symmetric(edges);
  double s = 1.0;
  for (double ek : ed) {
    out.bound += s * ek;
    s *= 0.5;
  }
  return out;
}

double af_bound(double v1, int k) {
  if (!(v1 >= 0.0)) throw InvalidArgument("af_bound: v1 must be nonnegative");
  if (k < 0) throw InvalidArgument("af_bound: k must be nonnegative");
  return std::pow(v1, k) / factorial_d(k);
}

}  // namespace mag
