#pragma once

// Rademacher embedding of l2^d into l1 over the sign-pattern space
// ({-1, 1}^n)^d: T(e_i)(x) = n^{-1/2} sum_j x_{i,j}.

#include <cstdint>
#include <span>
#include <vector>

#include "magnitude/core/body.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/intrinsic.hpp"

namespace mag::embedding {

/// Largest n * d for which the full sign-pattern table is built.
inline constexpr int kExhaustiveCapBits = 24;

enum class Scaling {
  /// T(y)(x) = <y, S^n(x)>
  plain,
  /// sqrt(pi/2) 2^{-nd} T(y)(x), whose l1 norm approximates ||y||_2
  normalized,
};

/// Pattern index bit (i*n + j) set means x_{i,j} = -1.
struct EmbeddedVector {
  int d = 0;
  int n = 0;
  Scaling scaling = Scaling::plain;
  std::vector<double> values;

  double l1_norm() const;
};

/// Throws ResourceLimit when n * d exceeds cap_bits.
EmbeddedVector embed(std::span<const double> y, int n, Scaling scaling,
                     int cap_bits = kExhaustiveCapBits);

/// ||T~(y)||_1 / ||y||_2 from the exhaustive table.
double distortion_ratio(std::span<const double> y, int n, int cap_bits = kExhaustiveCapBits);

/// Interval [1 - 4/sqrt(n), 1 + 4/sqrt(n)] that the distortion ratio must lie in.
struct DistortionBounds {
  double lower;
  double upper;
};
DistortionBounds distortion_bounds(int n);

struct SampledRatio {
  double value;
  double std_error;
};

/// Distortion ratio estimated from uniformly sampled sign patterns.
SampledRatio distortion_ratio_sampled(std::span<const double> y, int n, std::size_t samples,
                                      const RandomStream& rng);

/// (3 / sqrt(n)) sum_i |y_i|^3 for a unit vector y.
double berry_esseen_budget(std::span<const double> y, int n);

/// d x k matrix with independent entries n^{-1/2} (sum of n signs), n <= 64.
void rademacher_matrix(RandomStream& rng, int d, int k, int n, std::span<double> out);

/// (1/k!) (pi/2)^{k/2} E vol_k(M_n^T K), the l1 intrinsic volume of the
/// embedded body. k = 0 gives 1.
IntrinsicVolumeEstimate estimate_vk_prime(const Polytope& body, int k, int n, std::size_t samples,
                                          const RandomStream& rng);

/// The Gaussian (n -> infinity) counterpart; its mean is omega_k / 2^k V_k(K).
IntrinsicVolumeEstimate gaussian_limit_reference(const Polytope& body, int k, std::size_t samples,
                                                 const RandomStream& rng);

struct ConvergenceRow {
  int n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double target_std_error = 0.0;
};

/// estimate_vk_prime for each n against a fixed target.
std::vector<ConvergenceRow> convergence_table(const Polytope& body, int k, std::span<const int> ns,
                                              std::size_t samples, const RandomStream& rng,
                                              double target, double target_std_error);

}  // namespace mag::embedding
