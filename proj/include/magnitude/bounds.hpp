#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "magnitude/core/body.hpp"
#include "magnitude/core/metric_space.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/core/rational.hpp"
#include "magnitude/intrinsic.hpp"

namespace mag::bounds {

/// sum_k omega_k / 4^k V_k t^k. Requires vks[0] = 1.
double l2_upper_bound(std::span<const double> vks, double t);

/// sum_k V_k t^k / (k! omega_k). Reference only: false in general for d >= 5.
double conjecture_reference(std::span<const double> vks, double t);

/// f(t) = sum_k omega_k (v1 t)^k / (4^k k!), summed until the certified tail
/// is below tolerance.
double gb_series_bound(double v1, double t, double tolerance = 1e-15);

/// vol_d t^d / (d! omega_d)
double large_t_reference(int d, double vol_d, double t);

/// (V_d t^d + (d+1) V_{d-1} t^{d-1} + (pi/4)(d+1)^2 V_{d-2} t^{d-2}) / (d! omega_d), d >= 3 odd.
double gigo_expansion(int d, double vd, double vdm1, double vdm2, double t);

/// The same three terms for the unit ball, where every coefficient is rational.
Polynomial gigo_ball_polynomial(int d);

// --- Finite samples and lower bounds ---------------------------------------

struct SampleOptions {
  /// Stop refining once the next sample would exceed this many points.
  std::size_t cap_points = 2000;
  /// Stop refining once the magnitude increment falls below this.
  double tolerance = 1e-3;
  Metric metric = Metric::l2;
  /// Coarsest grid has this many cells along the longest extent.
  int initial_cells = 2;
};

/// Vertices plus the points of a lattice of the given spacing inside the body.
/// Boxes and intervals use per-axis uniform grids that include every vertex.
PointCloud lattice_sample(const ConvexBodySpec& body, double spacing);

struct LowerBound {
  double magnitude = 1.0;
  std::size_t points = 1;
  double spacing = 0.0;
  int refinements = 0;
  bool converged = false;
  /// Some refinement was discarded because the solve was not trustworthy.
  bool discarded_unstable = false;
};

/// Largest magnitude of tX over successively halved lattice samples X of the
/// body. Every sample is a subset, so each value is a lower bound for Mag(tK).
LowerBound sampled_magnitude(const ConvexBodySpec& body, double t, const SampleOptions& options = {});

// --- Intrinsic volumes of a body -------------------------------------------

struct IntrinsicProfile {
  std::vector<IntrinsicVolumeEstimate> vk;
  /// value + 3 * std_error for every k
  std::vector<double> inflated() const;
  std::vector<double> values() const;
};

/// Exact values for balls, boxes and intervals. For polytopes V_0 = 1, V_d is
/// the exact hull volume when d <= 3, 1 <= k <= 3 below that use kubota_mc,
/// and larger k fall back to af_bound of the inflated V_1.
IntrinsicProfile intrinsic_profile(const ConvexBodySpec& body, std::size_t samples, const RandomStream& rng);

// --- Reports ---------------------------------------------------------------

struct BoundRow {
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double conjecture = 0.0;
  double large_t = 0.0;
  std::size_t points = 0;
  bool violation = false;
  std::vector<std::string> flags;
};

struct BoundReport {
  std::string body;
  int dim = 0;
  IntrinsicProfile profile;
  std::vector<BoundRow> rows;
  bool conjecture_disproved = false;

  std::size_t violations() const;
};

/// Sandwich of sampled lower bounds against the intrinsic-volume upper bound,
/// with Monte Carlo V_k inflated by three standard errors.
BoundReport bound_check(const ConvexBodySpec& body, std::span<const double> t_grid, std::size_t samples,
                        const RandomStream& rng, const SampleOptions& options = {});

struct SmallTRow {
  double t = 0.0;
  double lower = 0.0;
  double gb_upper = 0.0;
  double l2_upper = 0.0;
  std::size_t points = 0;
};

struct SmallTReport {
  std::vector<SmallTRow> rows;
  double v1 = 0.0;
  /// |lower - 1| and |gb_upper - 1| at the smallest t
  double lower_deviation = 0.0;
  double upper_deviation = 0.0;
};

/// Tracks both sides of 1 <= Mag(tK) <= f(t) as t decreases to 0.
SmallTReport small_t_limit_check(const ConvexBodySpec& body, std::span<const double> t_sequence,
                                 std::size_t samples, const RandomStream& rng,
                                 const SampleOptions& options = {});

/// k-ball of the given radius centred at `center` inside the affine span of the
/// orthonormal `frame` vectors.
struct InradiusSection {
  int k = 1;
  std::vector<double> center;
  std::vector<std::vector<double>> frame;
  double inradius = 0.0;
};

/// Throws SectionNotContained if the section ball leaves the body, and
/// InvalidArgument for a malformed section (even k, bad frame).
void check_containment(const ConvexBodySpec& body, const InradiusSection& section);

struct SlopeRow {
  int k = 0;
  double inradius = 0.0;
  /// V_1(B^k) / 2 * inradius, computed from the exact odd-ball value
  double lower_slope = 0.0;
  /// V_1(K) / 2, inflated by three standard errors when estimated
  double upper_slope = 0.0;
  /// (Mag(tX) - 1) / t for a lattice sample X at the requested t
  double observed_slope = 0.0;
  bool ordered = false;
};

std::vector<SlopeRow> derivative_sandwich(const ConvexBodySpec& body, std::span<const InradiusSection> sections,
                                          double t, std::size_t samples, const RandomStream& rng,
                                          const SampleOptions& options = {});

}  // namespace mag::bounds
