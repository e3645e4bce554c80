// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magnitude/bounds.hpp"
#include "magnitude/core/errors.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/embedding.hpp"
#include "magnitude/finite_magnitude.hpp"
#include "magnitude/intrinsic.hpp"
#include "magnitude/schroeder.hpp"

using namespace mag;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

Polynomial poly(std::initializer_list<Rational> c) { return Polynomial(std::vector<Rational>(c)); }

// Mag(t B^d) as a polynomial when D is a constant.
Polynomial as_polynomial(const schroeder::BallMagnitudeResult& r) {
  if (r.D.degree() != 0) throw AssertionFailure("denominator is not constant");
  return r.N * (factorial(static_cast<unsigned>(r.d)) * r.D.coefficient(0)).inverse();
}

// Gamma(1 + n/2) = q or q sqrt(pi), returned as (q, has_sqrt_pi).
std::pair<Rational, bool> gamma_half(int n) {
  Rational q(1);
  if (n % 2 == 0) {
    for (int j = 1; j <= n / 2; ++j) q *= Rational(j);
    return {q, false};
  }
  // Gamma(1 + n/2) = (n/2)(n/2 - 1)...(1/2) sqrt(pi)
  for (int j = n; j >= 1; j -= 2) q *= Rational(j, 2);
  return {q, true};
}

// V_k(B^d) / (k! omega_k) = C(d, k) omega_d / (k! omega_k omega_{d-k}), rational for odd d.
Rational conjecture_coefficient(int d, int k) {
  const auto [gk, sk] = gamma_half(k);
  const auto [gdk, sdk] = gamma_half(d - k);
  const auto [gd, sd] = gamma_half(d);
  if (sk + sdk != static_cast<int>(sd)) throw AssertionFailure("sqrt(pi) does not cancel");
  Rational binom(1);
  for (int j = 1; j <= k; ++j) binom = binom * Rational(d - k + j) / Rational(j);
  return binom * gk * gdk / (gd * factorial(static_cast<unsigned>(k)));
}

Outcome c1_odd_ball() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto b1 = schroeder::ball_magnitude_function(1);
  const auto b3 = schroeder::ball_magnitude_function(3);
  o.require(as_polynomial(b1) == poly({1, 1}), "Mag(tB^1) != 1 + t");
  o.require(as_polynomial(b3) == poly({1, 2, 1, Rational(1, 6)}), "Mag(tB^3) != 1 + 2t + t^2 + t^3/6");
  for (int d : {1, 3, 5, 7}) {
    const auto r = schroeder::ball_magnitude_function(d);
    const Rational fd = factorial(static_cast<unsigned>(d));
    o.require(r.N.coefficient(0) == fd * r.D.coefficient(0), "N(0) != d! D(0) for d = " + std::to_string(d));
    const Rational slope = schroeder::derivative_at_zero(r);
    const Rational half_v1 = ball_v1_odd(static_cast<unsigned>(d / 2)) / Rational(2);
    o.require(slope == half_v1, "slope " + slope.str() + " != " + half_v1.str() + " for d = " + std::to_string(d));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 60.0, "took " + fmt(secs) + " s");
  if (o.pass) o.detail = "d in {1,3,5,7} exact, " + fmt(secs) + " s";
  return o;
}

Outcome c2_identities() {
  Outcome o;
  const auto rep = schroeder::verify_combinatorial_identities(5);
  std::set<std::string> seen;
  for (const auto& c : rep.checks) {
    seen.insert(c.name.substr(0, c.name.find('(')));
    o.require(c.holds, c.name + " m=" + std::to_string(c.m) + ": " + c.lhs + " != " + c.rhs);
  }
  for (const char* n : {"reciprocal_binomial_sum", "binomial_sum", "telescoping", "mu_weight_identity", "sigma_ratio",
                        "one_flat_classification"})
    o.require(seen.count(n) == 1, std::string("missing check ") + n);
  if (o.pass) o.detail = std::to_string(rep.checks.size()) + " exact checks for m <= 5";
  return o;
}

Outcome c3_interval() {
  Outcome o;
  const double len = 2.0;
  const double t = 1.0;
  double prev = 0.0;
  double last = 0.0;
  std::size_t points = 0;
  for (int cells = 1; cells + 1 <= 2000; cells *= 2) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i <= cells; ++i) rows.push_back({len * i / cells});
    const auto r = magnitude(FiniteMetricSpace::from_points(PointCloud::from_rows(rows), Metric::l2), t);
    o.require(r.value >= prev, "not increasing at " + std::to_string(cells + 1) + " points");
    o.require(r.value <= 1.0 + len * t / 2.0, "exceeds 1 + lt/2");
    prev = last = r.value;
    points = rows.size();
  }
  o.require(std::fabs(last - 2.0) <= 1e-3, "final gap " + fmt(2.0 - last));
  const auto lb = bounds::sampled_magnitude(Interval{len}, t);
  o.require(lb.points <= 2000 && std::fabs(lb.magnitude - 2.0) <= 1e-3, "sampled lower bound " + fmt(lb.magnitude));
  for (double s : {0.0, 1e-3, 0.37, 1.0, 2.5, 10.0, 123.456}) {
    const std::vector<double> vks{1.0, len};
    o.require(bounds::l2_upper_bound(vks, s) == 1.0 + len * s / 2.0, "upper bound not exact at t = " + fmt(s));
  }
  if (o.pass) o.detail = "Mag = " + fmt(last) + " at " + std::to_string(points) + " points, upper bound 1 + lt/2 exact";
  return o;
}

Outcome c4_l1_box() {
  Outcome o;
  bounds::SampleOptions opts;
  opts.metric = Metric::l1;
  const auto lb = bounds::sampled_magnitude(Box{{1.0, 1.0}}, 1.0, opts);
  o.require(std::fabs(lb.magnitude - 2.25) <= 1e-3, "grid magnitude " + fmt(lb.magnitude));
  o.require(lb.magnitude <= 2.25, "grid magnitude exceeds 9/4");
  const double edges[] = {1.0, 1.0};
  o.require(l1_box_magnitude(edges).exact == Rational(9, 4), "closed form != 9/4");
  if (o.pass) o.detail = "Mag = " + fmt(lb.magnitude) + " at " + std::to_string(lb.points) + " points";
  return o;
}

Outcome c5_sandwich() {
  Outcome o;
  RandomStream gen(RandomStream::kDefaultSeed, 5);
  std::vector<double> grid(20);
  for (int i = 0; i < 20; ++i) grid[static_cast<std::size_t>(i)] = 0.1 * std::pow(100.0, i / 19.0);
  std::size_t rows = 0;
  std::size_t violations = 0;
  double worst = -1e300;
  for (int b = 0; b < 20; ++b) {
    const int dim = b < 10 ? 2 : 3;
    const int nv = dim + 2 + static_cast<int>(gen.bits() % 8);
    std::vector<double> c;
    const double scale = 0.5 + 1.5 * gen.uniform();
    for (int i = 0; i < nv * dim; ++i) c.push_back(scale * (2.0 * gen.uniform() - 1.0));
    const Polytope p{dim, PointCloud(static_cast<std::size_t>(dim), c)};
    const auto rep = bounds::bound_check(p, grid, 20000, gen.fork(static_cast<std::uint64_t>(b)));
    for (const auto& r : rep.rows) {
      ++rows;
      worst = std::max(worst, r.lower / r.upper);
      if (r.violation) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rows) + " (body, t) pairs, max lower/upper " + fmt(worst);
  return o;
}

Outcome c6_distortion() {
  Outcome o;
  RandomStream gen(RandomStream::kDefaultSeed, 6);
  std::size_t checked = 0;
  double lo = 1e300;
  double hi = -1e300;
  for (int d = 1; d <= 16; ++d)
    for (int n = 1; n * d <= 16; ++n) {
      const auto b = embedding::distortion_bounds(n);
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(static_cast<std::size_t>(d));
        for (auto& v : y) v = gen.normal();
        const double r = embedding::distortion_ratio(y, n);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++checked;
        if (r < b.lower || r > b.upper)
          o.require(false, "d=" + std::to_string(d) + " n=" + std::to_string(n) + " ratio " + fmt(r));
      }
    }
  if (o.pass) o.detail = std::to_string(checked) + " ratios in [" + fmt(lo) + ", " + fmt(hi) + "]";
  return o;
}

Outcome c7_vk_limit() {
  Outcome o;
  const RandomStream rng(RandomStream::kDefaultSeed);
  const Polytope sq{2, PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}})};
  const std::size_t samples = 100000;
  const double targets[] = {2.0, std::numbers::pi / 4};
  std::ostringstream detail;
  for (int k = 1; k <= 2; ++k) {
    const auto e = embedding::estimate_vk_prime(sq, k, 64, samples, rng.fork(static_cast<std::uint64_t>(k)));
    const double target = targets[k - 1];
    const double z = (e.value - target) / e.std_error;
    o.require(std::fabs(z) <= 3.0, "k=" + std::to_string(k) + " V'_k estimate " + fmt(e.value) + " is " + fmt(z) +
                                       " sigma from " + fmt(target));
    detail << "k=" << k << " z=" << fmt(z) << " ";
  }
  // estimators against exact values: square (box) and balls
  const double edges[] = {1.0, 1.0};
  const auto exact_sq = box_intrinsic_volumes(edges);
  for (int k = 1; k <= 2; ++k) {
    const auto ku = kubota_mc(sq, k, samples, rng.fork(10 + static_cast<std::uint64_t>(k)));
    const auto ts = tsirelson_mc(sq, k, samples, rng.fork(20 + static_cast<std::uint64_t>(k)));
    const double v = exact_sq[static_cast<std::size_t>(k)].value;
    o.require(std::fabs(ku.value - v) <= 3.0 * ku.std_error + 1e-12, "kubota square k=" + std::to_string(k));
    o.require(std::fabs(ts.value - v) <= 3.0 * ts.std_error + 1e-12, "tsirelson square k=" + std::to_string(k));
  }
  const Polytope cube = unit_cube(3);
  for (int k = 1; k <= 3; ++k) {
    const double v = k == 1 ? 3.0 : (k == 2 ? 3.0 : 1.0);
    const auto ku = kubota_mc(cube, k, samples, rng.fork(30 + static_cast<std::uint64_t>(k)));
    const auto ts = tsirelson_mc(cube, k, samples, rng.fork(40 + static_cast<std::uint64_t>(k)));
    o.require(std::fabs(ku.value - v) <= 3.0 * ku.std_error + 1e-12, "kubota cube k=" + std::to_string(k));
    o.require(std::fabs(ts.value - v) <= 3.0 * ts.std_error + 1e-12, "tsirelson cube k=" + std::to_string(k));
  }
  for (int k = 1; k <= 3; ++k) {
    const double v = ball_intrinsic_volume(3, k, 1.0).value;
    const auto ku = kubota_mc(Ball{3, 1.0}, k, samples, rng.fork(50 + static_cast<std::uint64_t>(k)));
    const auto ts = tsirelson_mc(Ball{3, 1.0}, k, samples, rng.fork(60 + static_cast<std::uint64_t>(k)));
    o.require(std::fabs(ku.value - v) <= 3.0 * ku.std_error + 1e-9 * v, "kubota ball k=" + std::to_string(k));
    o.require(std::fabs(ts.value - v) <= 3.0 * ts.std_error + 1e-12, "tsirelson ball k=" + std::to_string(k));
  }
  o.detail = detail.str() + (o.detail.empty() ? "" : "| " + o.detail);
  return o;
}

Outcome c8_small_t() {
  Outcome o;
  const double t = 1e-3;
  struct Case {
    const char* name;
    ConvexBodySpec body;
    double v1;
  };
  const Case cases[] = {
      {"segment", Interval{1.0}, 1.0},
      {"square", Box{{1.0, 1.0}}, 2.0},
      {"ball", Ball{3, 1.0}, 4.0},
  };
  std::ostringstream detail;
  for (const auto& c : cases) {
    const auto lb = bounds::sampled_magnitude(c.body, t);
    const double upper = 1.0 + c.v1 / 2.0 * t + 10.0 * t * t;
    o.require(lb.magnitude >= 1.0 && lb.magnitude <= upper,
              std::string(c.name) + " magnitude " + fmt(lb.magnitude) + " outside [1, " + fmt(upper) + "]");
    detail << c.name << " " << fmt(lb.magnitude) << " ";
    for (double s : {1e-2, 3e-3, 1e-3, 1e-4, 1e-6}) {
      const double f = bounds::gb_series_bound(c.v1, s);
      o.require(f >= 1.0 && f - 1.0 <= 1.1 * (omega(1) / 4.0) * c.v1 * s,
                std::string(c.name) + " series at t=" + fmt(s) + " gives " + fmt(f));
    }
  }
  double prev = 1e300;
  for (double s : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 0.0}) {
    const double f = bounds::gb_series_bound(4.0, s);
    o.require(f <= prev, "series not decreasing as t -> 0");
    prev = f;
  }
  o.require(prev == 1.0, "series at t = 0 is " + fmt(prev));
  o.detail = detail.str() + (o.detail.empty() ? "" : "| " + o.detail);
  return o;
}

Outcome c9_asymptotics() {
  Outcome o;
  const auto b3 = schroeder::ball_magnitude_function(3);
  o.require(bounds::gigo_ball_polynomial(3) + Polynomial(1) == as_polynomial(b3), "d=3 expansion + 1 != Mag(tB^3)");
  const auto b5 = schroeder::ball_magnitude_function(5);
  const Polynomial part = b5.ratfun.polynomial_part();
  const Polynomial gigo = bounds::gigo_ball_polynomial(5);
  for (std::size_t i : {5u, 4u, 3u})
    o.require(part.coefficient(i) == gigo.coefficient(i), "d=5 t^" + std::to_string(i) + " coefficient " +
                                                             part.coefficient(i).str() + " vs " +
                                                             gigo.coefficient(i).str());
  o.require(part.degree() == 5, "d=5 polynomial part has degree " + std::to_string(part.degree()));
  const double lt = bounds::large_t_reference(3, omega(3), 1.0);
  o.require(b3.N.coefficient(3) / (Rational(6) * b3.D.coefficient(0)) == Rational(1, 6), "cubic coefficient != 1/6");
  o.require(std::fabs(lt - 1.0 / 6.0) <= 1e-15, "large-t coefficient " + fmt(lt));
  if (o.pass) o.detail = "d=5 top coefficients " + part.coefficient(5).str() + ", " + part.coefficient(4).str() + ", " +
                         part.coefficient(3).str();
  return o;
}

Outcome c10_conjecture() {
  Outcome o;
  auto exact_conjecture = [](int d, const Rational& t) {
    Rational s;
    Rational tk(1);
    for (int k = 0; k <= d; ++k) {
      s += conjecture_coefficient(d, k) * tk;
      tk *= t;
    }
    return s;
  };
  auto float_conjecture = [](int d, double t) {
    std::vector<double> vks;
    for (int k = 0; k <= d; ++k) vks.push_back(ball_intrinsic_volume(d, k, 1.0).value);
    return bounds::conjecture_reference(vks, t);
  };
  const Rational one(1);
  const Rational mag3 = schroeder::ball_magnitude_function(3).ratfun(one);
  const Rational mag5 = schroeder::ball_magnitude_function(5).ratfun(one);
  o.require(exact_conjecture(3, one) == mag3, "d=3 conjecture " + exact_conjecture(3, one).str() + " != " + mag3.str());
  o.require(std::fabs(float_conjecture(3, 1.0) - mag3.to_double()) <= 1e-12, "d=3 float conjecture disagrees");
  const Rational gap = exact_conjecture(5, one) - mag5;
  const double float_gap = float_conjecture(5, 1.0) - mag5.to_double();
  o.require(!gap.is_zero(), "d=5 conjecture agrees exactly");
  o.require(std::fabs(float_gap) > 1e-6, "d=5 float gap " + fmt(float_gap));
  o.require(std::fabs(float_gap - gap.to_double()) <= 1e-12, "float and exact gaps differ");
  if (o.pass)
    o.detail = "d=5 at t=1: Mag = " + mag5.str() + ", conjecture = " + exact_conjecture(5, one).str() + ", gap " +
               gap.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact odd-ball magnitude", c1_odd_ball},
      {"combinatorial identity suite", c2_identities},
      {"interval equality case", c3_interval},
      {"l1 box magnitude", c4_l1_box},
      {"upper-bound sandwich on random polytopes", c5_sandwich},
      {"exhaustive distortion bounds", c6_distortion},
      {"l1 intrinsic volume limit and estimator accuracy", c7_vk_limit},
      {"small-t limit", c8_small_t},
      {"asymptotic cross-checks", c9_asymptotics},
      {"disproved conjecture witness", c10_conjecture},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
