#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "magnitude/core/errors.hpp"
#include "magnitude/core/special.hpp"
#include "magnitude/intrinsic.hpp"
#include "magnitude/schroeder.hpp"

using namespace mag;
using namespace mag::schroeder;

namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

Polynomial brute_weight_sum(int k, int j) {
  Polynomial s;
  for (const auto& c : enumerate_collections(k)) s += weight_product(c, j);
  return s;
}

}  // namespace

TEST_CASE("small enumerations") {
  CHECK(enumerate_collections(-1).size() == 1);
  CHECK(enumerate_collections(-1)[0].paths.empty());
  const auto x0 = enumerate_collections(0);
  REQUIRE(x0.size() == 1);
  CHECK(x0[0].paths.size() == 1);
  CHECK(x0[0].paths[0].steps.empty());
  const auto x1 = enumerate_collections(1);
  REQUIRE(x1.size() == 2);
  std::multiset<int> flats;
  for (const auto& c : x1) flats.insert(c.flat_count());
  CHECK(flats == std::multiset<int>{0, 1});
}

TEST_CASE("every enumerated collection is valid and distinct") {
  for (int k = 0; k <= 4; ++k) {
    const auto xs = enumerate_collections(k);
    for (const auto& c : xs) CHECK_NOTHROW(validate(c));
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK_FALSE(xs[i] == xs[i - 1]);
    std::vector<std::vector<Node>> keys;
    for (const auto& c : xs) {
      std::vector<Node> all;
      for (const auto& p : c.paths) {
        const auto n = p.nodes();
        all.insert(all.end(), n.begin(), n.end());
        all.push_back({-1000 - p.index, 0});
      }
      keys.push_back(all);
    }
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  }
}

TEST_CASE("validate rejects broken collections") {
  auto roof = roof_collection(2);
  CHECK_NOTHROW(validate(roof));
  auto shared = roof;
  shared.paths[1].steps = {{StepKind::flat, {-1, 1}}};
  // the flat path of index 1 runs through (0, 1), free, but the outer path is a roof: still valid
  CHECK_NOTHROW(validate(shared));
  auto clash = roof;
  clash.paths[2].steps = {{StepKind::descent, {-2, 2}}, {StepKind::ascent, {-1, 1}}, {StepKind::flat, {0, 2}}};
  CHECK_THROWS_AS(validate(clash), InvalidArgument);
  auto wrong_end = roof;
  wrong_end.paths[1].steps.pop_back();
  CHECK_THROWS_AS(validate(wrong_end), InvalidArgument);
}

TEST_CASE("counts by flat steps agree with enumeration") {
  for (int k = -1; k <= 5; ++k) {
    const auto xs = enumerate_collections(k);
    std::vector<long> by_flats;
    for (const auto& c : xs) {
      const auto f = static_cast<std::size_t>(c.flat_count());
      if (by_flats.size() <= f) by_flats.resize(f + 1, 0);
      ++by_flats[f];
    }
    const Polynomial dp = count_by_flats(k);
    for (std::size_t f = 0; f < by_flats.size(); ++f) CHECK(dp.coefficient(f) == Rational(by_flats[f]));
    CHECK(dp.degree() + 1 == static_cast<int>(by_flats.size()));
    if (k >= 1) CHECK(by_flats[1] == k * (k + 1) / 2);
    if (k >= 0) CHECK(by_flats[0] == 1);
  }
}

TEST_CASE("collection counts are powers of two") {
  for (int k = 0; k <= 9; ++k) {
    const Polynomial c = count_by_flats(k);
    const Rational total = c(Rational(1));
    CHECK(total == Rational(mpz_class(mpz_class(1) << (k * (k + 1) / 2))));
  }
}

TEST_CASE("weight sums from the column sweep match brute force") {
  for (int k = -1; k <= 5; ++k)
    for (int j : {0, 2}) CHECK(weight_sum(k, j) == brute_weight_sum(k, j));
}

TEST_CASE("weight products") {
  CHECK(weight_product(DisjointCollection{-1, {}}, 2) == Polynomial(1));
  CHECK(weight_product(DisjointCollection{-1, {}}, 0) == Polynomial(1));
  CHECK(weight_product(roof_collection(1), 2) == Polynomial(1));
  CHECK(weight_product(roof_collection(1), 0) == Polynomial(3));
  for (const auto& c : enumerate_collections(1))
    if (c.flat_count() == 1) CHECK(weight_product(c, 2) == Polynomial::t());
}

TEST_CASE("ball magnitude functions") {
  const auto b1 = ball_magnitude_function(1);
  CHECK(b1.N == P({1, 1}));
  CHECK(b1.D == Polynomial(1));
  const auto b3 = ball_magnitude_function(3);
  CHECK(b3.N == P({6, 12, 6, 1}));
  CHECK(b3.D == Polynomial(1));
  CHECK(b3.ratfun(Rational(1)) == Rational(25, 6));
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 7.5}) {
    const double cubic = 1 + 2 * t + t * t + t * t * t / 6;
    CHECK(std::fabs(b3.ratfun(t) - cubic) <= 1e-12 * cubic);
  }
  CHECK(derivative_at_zero(b1) == Rational(1));
  CHECK(derivative_at_zero(b3) == Rational(2));
  CHECK(derivative_at_zero(ball_magnitude_function(5)) == Rational(8, 3));
  CHECK(derivative_at_zero(ball_magnitude_function(7)) == Rational(16, 5));
  CHECK_THROWS_AS(ball_magnitude_function(4), InvalidArgument);
  CHECK_THROWS_AS(ball_magnitude_function(-1), InvalidArgument);
  CHECK_THROWS_AS(ball_magnitude_function(9, 4), ResourceLimit);
}

TEST_CASE("N(0) = d! D(0) and the slope for every odd d in range") {
  for (int d = 1; d <= 13; d += 2) {
    const auto r = ball_magnitude_function(d);
    CHECK(r.N.coefficient(0) == factorial(static_cast<unsigned>(d)) * r.D.coefficient(0));
    CHECK(derivative_at_zero(r) == ball_v1_odd(static_cast<unsigned>(d / 2)) / Rational(2));
    CHECK(r.ratfun(Rational(0)) == Rational(1));
  }
}

TEST_CASE("leading coefficient matches the volume asymptotics") {
  for (int d = 1; d <= 9; d += 2) {
    const auto r = ball_magnitude_function(d);
    const Rational lead = r.N.coefficient(static_cast<std::size_t>(r.N.degree())) /
                          (factorial(static_cast<unsigned>(d)) *
                           r.D.coefficient(static_cast<std::size_t>(r.D.degree())));
    CHECK(r.N.degree() - r.D.degree() == d);
    // vol(B^d) / (d! omega_d) = 1 / d!
    CHECK(lead == factorial(static_cast<unsigned>(d)).inverse());
  }
}

TEST_CASE("roof and mu") {
  CHECK(roof_collection(0).paths.size() == 1);
  CHECK(roof_collection(2).flat_count() == 0);
  for (int m = 0; m <= 4; ++m) {
    const auto r = ball_magnitude_function(2 * m + 1);
    CHECK(weight_product(roof_collection(m + 1), 2) == Polynomial(r.N.coefficient(0)));
  }
  CHECK(mu_map(DisjointCollection{-1, {}}) == roof_collection(1));
  CHECK(weight_product(mu_map(DisjointCollection{-1, {}}), 2) == Polynomial(1));
  const auto x0 = enumerate_collections(0);
  CHECK(weight_product(mu_map(x0[0]), 2) == Polynomial(6));
  for (const auto& c : enumerate_collections(1)) {
    const auto image = mu_map(c);
    CHECK_NOTHROW(validate(image));
    CHECK(image.k == 3);
    CHECK(image.flat_count() == c.flat_count());
    CHECK(weight_product(image, 2) == weight_product(c, 0) * Polynomial(factorial(5)));
  }
}

TEST_CASE("one-flat collections") {
  const auto x2 = enumerate_collections(2, {std::size_t{1} << 22, 1});
  std::vector<DisjointCollection> ones;
  for (const auto& c : x2)
    if (c.flat_count() == 1) ones.push_back(c);
  CHECK(ones.size() == 3);
  for (const auto& pq : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 0}}) {
    const auto s = sigma_pq(2, pq.first, pq.second);
    CHECK(std::count(ones.begin(), ones.end(), s) == 1);
  }
  CHECK_THROWS_AS(sigma_pq(2, 2, 1), InvalidArgument);
  CHECK_THROWS_AS(sigma_pq(2, 0, 0), InvalidArgument);
}

TEST_CASE("sigma ratio for m = 1 sums to the slope") {
  const auto roof = weight_product(roof_collection(2), 2).coefficient(0);
  Rational total;
  for (int p = 1; p <= 2; ++p)
    for (int q = 0; q <= 2 - p; ++q) {
      const Rational ratio = weight_product(sigma_pq(2, p, q), 2).coefficient(1) / roof;
      CHECK(ratio == sigma_ratio_closed_form(p, q));
      total += ratio;
    }
  CHECK(sigma_ratio_closed_form(1, 0) == Rational(1));
  CHECK(sigma_ratio_closed_form(1, 1) == Rational(2, 3));
  CHECK(sigma_ratio_closed_form(2, 0) == Rational(1, 3));
  CHECK(total == Rational(2));
}

TEST_CASE("identity suite") {
  const auto report = verify_combinatorial_identities(5);
  for (const auto& c : report.checks) {
    INFO(c.name << " m=" << c.m << " lhs=" << c.lhs << " rhs=" << c.rhs);
    CHECK(c.holds);
  }
  CHECK(report.all_hold());
  std::set<std::string> names;
  for (const auto& c : report.checks) names.insert(c.name.substr(0, c.name.find('(')));
  for (const char* n : {"reciprocal_binomial_sum", "binomial_sum", "telescoping", "mu_weight_identity", "sigma_ratio",
                        "one_flat_classification", "mu_set_difference"})
    CHECK(names.count(n) == 1);
  const auto ms = std::count_if(report.checks.begin(), report.checks.end(),
                                [](const IdentityCheck& c) { return c.name == "telescoping"; });
  CHECK(ms == 6);
}

TEST_CASE("enumeration cap") {
  EnumerationOptions tiny;
  tiny.max_collections = 100;
  CHECK_THROWS_AS(enumerate_collections(4, tiny), ResourceLimit);
  CHECK_THROWS_AS(enumerate_collections(-2), InvalidArgument);
}
