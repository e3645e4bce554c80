#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "magnitude/core/body.hpp"
#include "magnitude/core/errors.hpp"
#include "magnitude/core/metric_space.hpp"
#include "magnitude/core/random.hpp"
#include "magnitude/core/rational.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/core/stats.hpp"

using namespace mag;

namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

Rational random_rational(RandomStream& rng) {
  const long num = static_cast<long>(rng.bits() % 2001) - 1000;
  const long den = static_cast<long>(rng.bits() % 999) + 1;
  return Rational(num, den);
}

}  // namespace

TEST_CASE("rational normal form") {
  const Rational r(6, -4);
  CHECK(r.str() == "-3/2");
  CHECK(r.denominator() > 0);
  CHECK(Rational(10, 5).str() == "2");
  CHECK(Rational::parse("-12/18") == Rational(-2, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
  CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/x"), InvalidArgument);
}

TEST_CASE("rational field axioms on random triples") {
  RandomStream rng(7);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    const mpz_class g = gcd(a.numerator(), a.denominator());
    CHECK(abs(g) == 1);
  }
}

TEST_CASE("polynomial basics") {
  CHECK(Polynomial()(Rational(5)) == Rational(0));
  CHECK(Polynomial()(3.0) == 0.0);
  const Polynomial p = P({6, 12, 6, 1});
  CHECK(p.derivative()(Rational(0)) == Rational(12));
  CHECK(p.degree() == 3);
  CHECK(P({1, 0, 0}).degree() == 0);
  CHECK(P({0, 0}).is_zero());
  const Polynomial one_plus_t = P({1, 1});
  CHECK(one_plus_t * one_plus_t * one_plus_t == P({1, 3, 3, 1}));
  const auto dm = P({1, 3, 3, 1}).divmod(one_plus_t);
  CHECK(dm.quotient == P({1, 2, 1}));
  CHECK(dm.remainder.is_zero());
  CHECK(P({0, 0, 2}).valuation() == 2);
  CHECK(P({0, 0, 2}).shift_down(2) == P({2}));
}

TEST_CASE("rational function evaluation") {
  const RationalFunction f(P({1, 1}), P({1}));
  CHECK(f(Rational(3)) == Rational(4));
  CHECK(f(3.0) == doctest::Approx(4.0));
  const RationalFunction g(P({1}), P({-1, 1}));
  CHECK_THROWS_AS(g(Rational(1)), DivisionByZero);
  CHECK_THROWS_AS(RationalFunction(P({1}), Polynomial()), DivisionByZero);
  // t^2 / (t + t^2) cancels one power of t
  const RationalFunction h(P({0, 0, 1}), P({0, 1, 1}));
  CHECK(h.denominator().coefficient(0) != Rational(0));
  CHECK(h(Rational(0)) == Rational(0));
}

TEST_CASE("omega values") {
  CHECK(omega(0) == 1.0);
  CHECK(omega(1) == 2.0);
  CHECK(omega(2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(omega(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(omega(-1), InvalidArgument);
}

TEST_CASE("omega satisfies the two-step recursion") {
  for (int n = 2; n <= 80; ++n) {
    const double rec = omega(n - 2) * 2.0 * std::numbers::pi / n;
    CHECK(std::fabs(omega(n) - rec) <= 1e-12 * rec);
  }
}

TEST_CASE("half binomial") {
  CHECK(half_binomial(Rational(1, 2), 1) == Rational(1, 2));
  CHECK(half_binomial(Rational(3, 2), 2) == Rational(3, 8));
  CHECK(half_binomial(Rational(-1, 2), 0) == Rational(1));
  CHECK(half_binomial(Rational(5), 2) == Rational(10));
}

TEST_CASE("half binomial Pascal identity on random arguments") {
  RandomStream rng(11);
  for (int i = 0; i < 300; ++i) {
    const Rational x(static_cast<long>(rng.bits() % 41) - 20, 2);
    const unsigned k = 1 + static_cast<unsigned>(rng.bits() % 12);
    CHECK(half_binomial(x, k) == half_binomial(x - 1, k) + half_binomial(x - 1, k - 1));
  }
}

TEST_CASE("finite metric space validation") {
  CHECK_NOTHROW(FiniteMetricSpace(2, {0, 1, 1, 0}));
  CHECK_THROWS_AS(FiniteMetricSpace(2, {0, 1, 2, 0}), InvalidArgument);
  CHECK_THROWS_AS(FiniteMetricSpace(2, {1, 1, 1, 0}), InvalidArgument);
  CHECK_THROWS_AS(FiniteMetricSpace(2, {0, 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(FiniteMetricSpace(2, {0, -1, -1, 0}), InvalidArgument);
  const std::vector<double> bad{0, 1, 5, 1, 0, 1, 5, 1, 0};
  CHECK_THROWS_AS(FiniteMetricSpace(3, bad), InvalidArgument);
  FiniteMetricSpace::Options skip;
  skip.check_triangle = false;
  CHECK_NOTHROW(FiniteMetricSpace(3, bad, skip));
}

TEST_CASE("point distances") {
  const auto pc = PointCloud::from_rows({{0, 0}, {3, 4}, {1, 1}});
  const auto l2 = FiniteMetricSpace::from_points(pc, Metric::l2);
  const auto l1 = FiniteMetricSpace::from_points(pc, Metric::l1);
  CHECK(l2.distance(0, 1) == doctest::Approx(5.0));
  CHECK(l1.distance(0, 1) == doctest::Approx(7.0));
  CHECK(l1.distance(1, 2) == doctest::Approx(5.0));
  CHECK_THROWS_AS(FiniteMetricSpace::from_points(PointCloud::from_rows({{1, 2}, {1, 2}}), Metric::l2),
                  InvalidArgument);
  const std::vector<std::size_t> idx{0, 1};
  const auto sub = l2.subspace(idx);
  CHECK(sub.size() == 2);
  CHECK(sub.distance(0, 1) == doctest::Approx(5.0));
}

TEST_CASE("body validation") {
  CHECK_NOTHROW(validate(Ball{3, 1.0}));
  CHECK_THROWS_AS(validate(Ball{0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(Ball{2, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(Box{{}}), InvalidArgument);
  CHECK_THROWS_AS(validate(Box{{1.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(validate(Interval{0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(Polytope{2, PointCloud()}), InvalidArgument);
  CHECK_THROWS_AS(validate(Polytope{3, PointCloud::from_rows({{0, 0}})}), InvalidArgument);
  CHECK(ambient_dim(Box{{1, 2, 3}}) == 3);
  CHECK(to_polytope(Box{{1, 2}}).vertices.size() == 4);
  CHECK(unit_cube(3).vertices.size() == 8);
  CHECK_THROWS(to_polytope(Ball{2, 1.0}));
}

TEST_CASE("random streams are reproducible and distinct") {
  RandomStream a(42, 3), b(42, 3), c(42, 4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.bits();
    CHECK(x == b.bits());
    seen.insert(x);
    seen.insert(c.bits());
  }
  CHECK(seen.size() == 200);
  RandomStream f1 = RandomStream(42).fork(1), f2 = RandomStream(42).fork(2);
  CHECK(f1.bits() != f2.bits());
  CHECK(RandomStream(42).fork(1).bits() == RandomStream(42).fork(1).bits());
}

TEST_CASE("rademacher sums have the right law") {
  RandomStream rng(5);
  RunningStats s;
  for (int i = 0; i < 20000; ++i) {
    const int v = rng.rademacher_sum(16);
    CHECK((v + 16) % 2 == 0);
    s.add(v);
  }
  CHECK(std::fabs(s.mean()) < 5 * std::sqrt(16.0 / 20000));
  CHECK(s.variance() == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("running stats merge matches a single pass") {
  RunningStats all, a, b;
  for (int i = 0; i < 100; ++i) {
    const double x = std::sin(i) * 3 + i * 0.01;
    all.add(x);
    (i < 37 ? a : b).add(x);
  }
  a.merge(b);
  CHECK(a.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
  CHECK(a.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}
