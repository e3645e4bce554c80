#include "magnitude/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnitude/core/errors.hpp"
#include "magnitude/core/parallel.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/finite_magnitude.hpp"
#include "magnitude/hull.hpp"
#include "magnitude/schroeder.hpp"

namespace mag::bounds {

namespace {

void check_vks(std::span<const double> vks, double t) {
  if (vks.empty() || vks[0] != 1.0) throw InvalidArgument("intrinsic volumes must start with V_0 = 1");
  if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
}

}  // namespace

double l2_upper_bound(std::span<const double> vks, double t) {
  check_vks(vks, t);
  double s = 0.0;
  double tk = 1.0;
  double four_k = 1.0;
  for (std::size_t k = 0; k < vks.size(); ++k) {
    s += omega(static_cast<int>(k)) / four_k * vks[k] * tk;
    tk *= t;
    four_k *= 4.0;
  }
  return s;
}

double conjecture_reference(std::span<const double> vks, double t) {
  check_vks(vks, t);
  double s = 0.0;
  double tk = 1.0;
  for (std::size_t k = 0; k < vks.size(); ++k) {
    const int kk = static_cast<int>(k);
    s += vks[k] * tk / (factorial_d(kk) * omega(kk));
    tk *= t;
  }
  return s;
}

double gb_series_bound(double v1, double t, double tolerance) {
  if (!(v1 >= 0.0) || !(t >= 0.0)) throw InvalidArgument("gb_series_bound: v1 and t must be nonnegative");
  const double x = v1 * t;
  double term = 1.0;
  double sum = 1.0;
  if (x == 0.0) return sum;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k < 100000; ++k) {
    // term_{k+1} / term_k = (omega_{k+1} / omega_k) x / (4 (k + 1)), decreasing in k
    const double ratio = sqrt_pi * std::exp(std::lgamma(0.5 * k + 1.0) - std::lgamma(0.5 * k + 1.5)) * x /
                         (4.0 * (k + 1));
    term *= ratio;
    sum += term;
    if (ratio < 1.0) {
      const double next_ratio = sqrt_pi * std::exp(std::lgamma(0.5 * (k + 1) + 1.0) - std::lgamma(0.5 * (k + 1) + 1.5)) *
                                x / (4.0 * (k + 2));
      if (term * next_ratio / (1.0 - next_ratio) < tolerance * sum) break;
    }
  }
  return sum;
}

double large_t_reference(int d, double vol_d, double t) {
  if (d < 1 || !(vol_d >= 0.0)) throw InvalidArgument("large_t_reference: need d >= 1 and vol_d >= 0");
  return vol_d * std::pow(t, d) / (factorial_d(d) * omega(d));
}

double gigo_expansion(int d, double vd, double vdm1, double vdm2, double t) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("gigo_expansion: d must be odd and >= 3");
  const double c = 1.0 / (factorial_d(d) * omega(d));
  return c * (vd * std::pow(t, d) + (d + 1) * vdm1 * std::pow(t, d - 1) +
              std::numbers::pi / 4.0 * (d + 1) * (d + 1) * vdm2 * std::pow(t, d - 2));
}

Polynomial gigo_ball_polynomial(int d) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("gigo_ball_polynomial: d must be odd and >= 3");
  // V_d = omega_d, V_{d-1} = d omega_d / 2, V_{d-2} = C(d, 2) omega_d / pi.
  const Rational inv_fact = factorial(static_cast<unsigned>(d)).inverse();
  const long dl = d;
  Polynomial p = Polynomial::monomial(inv_fact, static_cast<std::size_t>(d));
  p += Polynomial::monomial(inv_fact * Rational((dl + 1) * dl, 2), static_cast<std::size_t>(d - 1));
  p += Polynomial::monomial(inv_fact * Rational((dl + 1) * (dl + 1) * dl * (dl - 1), 8),
                            static_cast<std::size_t>(d - 2));
  return p;
}

// --- sampling ---------------------------------------------------------------

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

double body_extent(const ConvexBodySpec& body) {
  return std::visit(overloaded{
                        [](const Ball& b) { return 2.0 * b.radius; },
                        [](const Box& b) { return *std::max_element(b.edges.begin(), b.edges.end()); },
                        [](const Interval& i) { return i.length; },
                        [](const Polytope& p) {
                          double e = 0.0;
                          for (std::size_t c = 0; c < p.vertices.dim(); ++c) {
                            double lo = p.vertices.point(0)[c];
                            double hi = lo;
                            for (std::size_t i = 1; i < p.vertices.size(); ++i) {
                              lo = std::min(lo, p.vertices.point(i)[c]);
                              hi = std::max(hi, p.vertices.point(i)[c]);
                            }
                            e = std::max(e, hi - lo);
                          }
                          return e;
                        },
                    },
                    body);
}

PointCloud product_grid(const std::vector<double>& edges, const std::vector<double>& origin, double spacing) {
  const std::size_t n = edges.size();
  std::vector<int> cells(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = std::max(1, static_cast<int>(std::ceil(edges[i] / spacing - 1e-9)));
    total *= static_cast<std::size_t>(cells[i] + 1);
  }
  std::vector<double> coords;
  coords.reserve(total * n);
  std::vector<int> idx(n, 0);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t i = 0; i < n; ++i) coords.push_back(origin[i] + edges[i] * idx[i] / cells[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] <= cells[i]) break;
      idx[i] = 0;
    }
  }
  return PointCloud(n, std::move(coords));
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Appends p unless some kept point lies within min_sep of it.
void add_separated(PointCloud& cloud, std::span<const double> p, double min_sep) {
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (sq_dist(cloud.point(i), p) < min_sep * min_sep) return;
  cloud.push_back(p);
}

// Lattice anchored at `lo` with the given spacing, filtered by `inside`.
template <class Inside>
void add_lattice(PointCloud& cloud, const std::vector<double>& lo, const std::vector<double>& hi, double spacing,
                 double min_sep, Inside&& inside) {
  const std::size_t n = lo.size();
  std::vector<int> cells(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = static_cast<int>(std::floor((hi[i] - lo[i]) / spacing + 1e-9));
    total *= static_cast<std::size_t>(cells[i] + 1);
  }
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + spacing * idx[i];
    if (inside(x)) add_separated(cloud, x, min_sep);
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] <= cells[i]) break;
      idx[i] = 0;
    }
  }
}

}  // namespace

PointCloud lattice_sample(const ConvexBodySpec& body, double spacing) {
  validate(body);
  if (!(spacing > 0.0)) throw InvalidArgument("lattice_sample: spacing must be positive");
  return std::visit(
      overloaded{
          [&](const Interval& i) { return product_grid({i.length}, {0.0}, spacing); },
          [&](const Box& b) { return product_grid(b.edges, std::vector<double>(b.edges.size(), 0.0), spacing); },
          [&](const Ball& b) {
            const auto d = static_cast<std::size_t>(b.dim);
            PointCloud cloud;
            const double reach = std::floor(b.radius / spacing + 1e-9) * spacing;
            const double r2 = b.radius * b.radius * (1.0 + 1e-12);
            add_lattice(cloud, std::vector<double>(d, -reach), std::vector<double>(d, reach), spacing, spacing / 4,
                        [&](const std::vector<double>& x) {
                          double s = 0.0;
                          for (double v : x) s += v * v;
                          return s <= r2;
                        });
            for (std::size_t axis = 0; axis < d; ++axis)
              for (double sign : {-1.0, 1.0}) {
                std::vector<double> p(d, 0.0);
                p[axis] = sign * b.radius;
                add_separated(cloud, p, spacing / 4);
              }
            return cloud;
          },
          [&](const Polytope& p) {
            PointCloud cloud;
            const double scale = std::max(body_extent(body), 1e-300);
            for (std::size_t i = 0; i < p.vertices.size(); ++i) add_separated(cloud, p.vertices.point(i), 1e-9 * scale);
            if (p.dim > 3) return cloud;
            std::vector<Halfspace> facets;
            try {
              facets = halfspaces(p);
            } catch (const InvalidArgument&) {
              return cloud;  // lower-dimensional: vertices only
            }
            const auto d = static_cast<std::size_t>(p.dim);
            std::vector<double> lo(d), hi(d);
            for (std::size_t c = 0; c < d; ++c) {
              lo[c] = hi[c] = p.vertices.point(0)[c];
              for (std::size_t i = 1; i < p.vertices.size(); ++i) {
                lo[c] = std::min(lo[c], p.vertices.point(i)[c]);
                hi[c] = std::max(hi[c], p.vertices.point(i)[c]);
              }
            }
            add_lattice(cloud, lo, hi, spacing, spacing / 4,
                        [&](const std::vector<double>& x) { return contains(facets, x, 1e-12 * scale); });
            return cloud;
          },
      },
      body);
}

LowerBound sampled_magnitude(const ConvexBodySpec& body, double t, const SampleOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("sampled_magnitude: t must be positive");
  LowerBound out;
  double spacing = body_extent(body) / std::max(1, options.initial_cells);
  double previous = 0.0;
  for (int level = 0;; ++level) {
    const PointCloud sample = lattice_sample(body, spacing);
    if (level > 0 && sample.size() > options.cap_points) break;
    MagnitudeResult r;
    try {
      r = magnitude(FiniteMetricSpace::from_points(sample, options.metric), t);
    } catch (const NotPositiveDefinite&) {
      out.discarded_unstable = true;
      break;
    }
    if (r.least_squares || r.ill_conditioned || r.weighting.residual > 1e-6) {
      out.discarded_unstable = true;
      break;
    }
    if (r.value >= out.magnitude || level == 0) {
      out.magnitude = std::max(level == 0 ? 1.0 : out.magnitude, r.value);
      out.points = sample.size();
      out.spacing = spacing;
    }
    out.refinements = level;
    if (level > 0 && std::fabs(r.value - previous) < options.tolerance) {
      out.converged = true;
      break;
    }
    previous = r.value;
    spacing /= 2.0;
  }
  return out;
}

// --- intrinsic volumes ------------------------------------------------------

std::vector<double> IntrinsicProfile::inflated() const {
  std::vector<double> v;
  for (const auto& e : vk) v.push_back(e.value + 3.0 * e.std_error);
  return v;
}

std::vector<double> IntrinsicProfile::values() const {
  std::vector<double> v;
  for (const auto& e : vk) v.push_back(e.value);
  return v;
}

IntrinsicProfile intrinsic_profile(const ConvexBodySpec& body, std::size_t samples, const RandomStream& rng) {
  validate(body);
  IntrinsicProfile prof;
  std::visit(overloaded{
                 [&](const Ball& b) {
                   for (int k = 0; k <= b.dim; ++k) prof.vk.push_back(ball_intrinsic_volume(b.dim, k, b.radius));
                 },
                 [&](const Box& b) { prof.vk = box_intrinsic_volumes(b.edges); },
                 [&](const Interval& i) {
                   const double e[] = {i.length};
                   prof.vk = box_intrinsic_volumes(e);
                 },
                 [&](const Polytope& p) {
                   prof.vk.push_back({0, 1.0, 0.0, EstimateMethod::exact, 0});
                   const int top = std::min(p.dim, kMaxProjectionDim);
                   for (int k = 1; k <= p.dim; ++k) {
                     if (k == p.dim && k <= 3) {
                       prof.vk.push_back({k, hull_volume(p.vertices), 0.0, EstimateMethod::exact, 0});
                     } else if (k <= top) {
                       prof.vk.push_back(kubota_mc(p, k, samples, rng.fork(static_cast<std::uint64_t>(k))));
                     } else {
                       const auto& v1 = prof.vk[1];
                       prof.vk.push_back({k, af_bound(v1.value + 3.0 * v1.std_error, k), 0.0,
                                          EstimateMethod::af_bound, 0});
                     }
                   }
                 },
             },
             body);
  return prof;
}

// --- reports ----------------------------------------------------------------

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BoundRow& r) { return r.violation; }));
}

BoundReport bound_check(const ConvexBodySpec& body, std::span<const double> t_grid, std::size_t samples,
                        const RandomStream& rng, const SampleOptions& options) {
  validate(body);
  BoundReport rep;
  rep.body = type_name(body);
  rep.dim = ambient_dim(body);
  rep.profile = intrinsic_profile(body, samples, rng);
  rep.conjecture_disproved = rep.dim >= 5;
  const auto upper_vks = rep.profile.inflated();
  const auto vks = rep.profile.values();
  const bool estimated = std::any_of(rep.profile.vk.begin(), rep.profile.vk.end(),
                                     [](const auto& e) { return e.method != EstimateMethod::exact; });
  rep.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    BoundRow& row = rep.rows[i];
    row.t = t_grid[i];
    const LowerBound lb = sampled_magnitude(body, row.t, options);
    row.lower = lb.magnitude;
    row.points = lb.points;
    row.upper = l2_upper_bound(upper_vks, row.t);
    row.conjecture = conjecture_reference(vks, row.t);
    row.large_t = large_t_reference(rep.dim, vks.back(), row.t);
    row.violation = row.lower > row.upper * (1.0 + 1e-9) + 1e-8;
    if (estimated) row.flags.emplace_back("mc_inflated");
    if (!lb.converged) row.flags.emplace_back("lower_unconverged");
    if (lb.discarded_unstable) row.flags.emplace_back("lower_refinement_unstable");
    if (rep.conjecture_disproved) row.flags.emplace_back("conjecture_disproved");
    if (row.violation) row.flags.emplace_back("violation");
  });
  return rep;
}

SmallTReport small_t_limit_check(const ConvexBodySpec& body, std::span<const double> t_sequence, std::size_t samples,
                                 const RandomStream& rng, const SampleOptions& options) {
  if (t_sequence.empty()) throw InvalidArgument("small_t_limit_check: empty t sequence");
  SmallTReport rep;
  const IntrinsicProfile prof = intrinsic_profile(body, samples, rng);
  const auto upper_vks = prof.inflated();
  rep.v1 = upper_vks.size() > 1 ? upper_vks[1] : 0.0;
  for (double t : t_sequence) {
    const LowerBound lb = sampled_magnitude(body, t, options);
    rep.rows.push_back({t, lb.magnitude, gb_series_bound(rep.v1, t), l2_upper_bound(upper_vks, t), lb.points});
  }
  const auto smallest = std::min_element(rep.rows.begin(), rep.rows.end(),
                                         [](const SmallTRow& a, const SmallTRow& b) { return a.t < b.t; });
  rep.lower_deviation = std::fabs(smallest->lower - 1.0);
  rep.upper_deviation = std::fabs(smallest->gb_upper - 1.0);
  return rep;
}

void check_containment(const ConvexBodySpec& body, const InradiusSection& s) {
  validate(body);
  const auto d = static_cast<std::size_t>(ambient_dim(body));
  if (s.k < 1 || s.k % 2 == 0) throw InvalidArgument("section dimension must be odd");
  if (static_cast<std::size_t>(s.k) > d) throw InvalidArgument("section dimension exceeds the body's");
  if (s.frame.size() != static_cast<std::size_t>(s.k)) throw InvalidArgument("section frame must have k vectors");
  if (s.center.size() != d) throw InvalidArgument("section center has wrong dimension");
  if (!(s.inradius > 0.0)) throw InvalidArgument("section inradius must be positive");
  for (std::size_t a = 0; a < s.frame.size(); ++a) {
    if (s.frame[a].size() != d) throw InvalidArgument("section frame vector has wrong dimension");
    for (std::size_t b = 0; b <= a; ++b) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += s.frame[a][c] * s.frame[b][c];
      if (std::fabs(dot - (a == b ? 1.0 : 0.0)) > 1e-9) throw InvalidArgument("section frame is not orthonormal");
    }
  }

  if (const auto* ball = std::get_if<Ball>(&body)) {
    const double c = std::sqrt(sq_dist(s.center, std::vector<double>(d, 0.0)));
    if (c + s.inradius > ball->radius * (1.0 + 1e-12))
      throw SectionNotContained("section ball leaves the ball body");
    return;
  }

  std::vector<Halfspace> facets;
  if (const auto* box = std::get_if<Box>(&body)) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> e(d, 0.0);
      e[i] = 1.0;
      facets.push_back({e, box->edges[i]});
      e[i] = -1.0;
      facets.push_back({e, 0.0});
    }
  } else if (const auto* seg = std::get_if<Interval>(&body)) {
    facets = {{{1.0}, seg->length}, {{-1.0}, 0.0}};
  } else {
    facets = halfspaces(std::get<Polytope>(body));
  }
  const double tol = 1e-12 * std::max(1.0, body_extent(body));
  for (const auto& h : facets) {
    double reach = 0.0;
    double along = 0.0;
    for (const auto& u : s.frame) {
      double proj = 0.0;
      for (std::size_t c = 0; c < d; ++c) proj += h.normal[c] * u[c];
      reach += proj * proj;
    }
    for (std::size_t c = 0; c < d; ++c) along += h.normal[c] * s.center[c];
    if (along + s.inradius * std::sqrt(reach) > h.offset + tol)
      throw SectionNotContained("section ball crosses a facet of the body");
  }
}

std::vector<SlopeRow> derivative_sandwich(const ConvexBodySpec& body, std::span<const InradiusSection> sections,
                                          double t, std::size_t samples, const RandomStream& rng,
                                          const SampleOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("derivative_sandwich: t must be positive");
  for (const auto& s : sections) check_containment(body, s);
  const IntrinsicProfile prof = intrinsic_profile(body, samples, rng);
  const double upper = prof.inflated().at(1) / 2.0;
  const double observed = (sampled_magnitude(body, t, options).magnitude - 1.0) / t;
  std::vector<SlopeRow> rows;
  for (const auto& s : sections) {
    const auto m = static_cast<unsigned>((s.k - 1) / 2);
    const Rational half_v1 = ball_v1_odd(m) / Rational(2);
    if (static_cast<int>(m) + 1 <= schroeder::kDefaultMaxCollectionIndex &&
        schroeder::derivative_at_zero(schroeder::ball_magnitude_function(s.k)) != half_v1)
      throw AssertionFailure("ball slope at 0 disagrees with V_1(B^k) / 2");
    SlopeRow row;
    row.k = s.k;
    row.inradius = s.inradius;
    row.lower_slope = half_v1.to_double() * s.inradius;
    row.upper_slope = upper;
    row.observed_slope = observed;
    row.ordered = row.lower_slope <= row.upper_slope * (1.0 + 1e-12);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mag::bounds
