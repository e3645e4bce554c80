#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "magnitude/core/body.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/core/rational.hpp"
#include "magnitude/core/stats.hpp"

namespace mag {

/// af_bound marks an upper bound V_1^k / k! used in place of an estimate.
enum class EstimateMethod { exact, kubota_mc, tsirelson_mc, rademacher_mc, af_bound };

std::string_view to_string(EstimateMethod m);

struct IntrinsicVolumeEstimate {
  int k = 0;
  double value = 0.0;
  /// Standard error of the mean; 0 for exact values.
  double std_error = 0.0;
  EstimateMethod method = EstimateMethod::exact;
  std::size_t samples = 0;
};

/// V_k(r B^d) = C(d, k) (omega_d / omega_{d-k}) r^k.
IntrinsicVolumeEstimate ball_intrinsic_volume(int d, int k, double r);

/// V_1 of the unit ball in odd dimension 2m + 1, exactly 2 / C(m - 1/2, m).
Rational ball_v1_odd(unsigned m);

/// e_0, ..., e_N of the values.
std::vector<double> elementary_symmetric(std::span<const double> values);

/// V_k of an axis-parallel box is e_k(edges).
std::vector<IntrinsicVolumeEstimate> box_intrinsic_volumes(std::span<const double> edges);

/// Largest k accepted by the projection estimators.
inline constexpr int kMaxProjectionDim = 3;

/// Fills a d x k row-major matrix for one Monte Carlo sample.
using MatrixSampler = std::function<void(RandomStream&, int d, int k, std::span<double>)>;

/// Statistics of vol_k(hull{ M^T v : v vertex }) over samples, where sample i
/// draws M from rng.substream(i). Deterministic for a given (seed, samples).
RunningStats projected_volume_stats(const Polytope& body, int k, std::size_t samples,
                                    const RandomStream& rng, const MatrixSampler& sampler);

/// Kubota estimator over uniformly random k-subspaces (orthonormalized Gaussian frames).
IntrinsicVolumeEstimate kubota_mc(const Polytope& body, int k, std::size_t samples,
                                  const RandomStream& rng);

/// Tsirelson estimator, (2 pi)^{k/2} / (omega_k k!) E vol_k(G^T K) with Gaussian G.
IntrinsicVolumeEstimate tsirelson_mc(const Polytope& body, int k, std::size_t samples,
                                     const RandomStream& rng);

/// Ball versions: every projection of r B^d is an ellipsoid of volume
/// omega_k r^k sqrt(det(M^T M)), so no hull is needed and any k <= d works.
IntrinsicVolumeEstimate kubota_mc(const Ball& body, int k, std::size_t samples, const RandomStream& rng);
IntrinsicVolumeEstimate tsirelson_mc(const Ball& body, int k, std::size_t samples, const RandomStream& rng);

/// (V'_0, ..., V'_N) of a box in l1^N: sums of coordinate-projection volumes.
struct L1IntrinsicVolumes {
  std::vector<double> values;
};

L1IntrinsicVolumes l1_intrinsic_volumes(std::span<const double> edges);

struct L1BoxMagnitude {
  /// prod (1 + a_i / 2)
  double magnitude = 0.0;
  /// sum 2^{-k} V'_k
  double bound = 0.0;
  /// Both sides agree as exact rationals of the input doubles.
  Rational exact;
};

/// Magnitude of a box with nonempty interior in l1^N. Throws AssertionFailure
/// if the product and the weighted sum disagree exactly.
L1BoxMagnitude l1_box_magnitude(std::span<const double> edges);

/// Alexandrov-Fenchel consequence V_k <= V_1^k / k!.
double af_bound(double v1, int k);

}  // namespace mag
