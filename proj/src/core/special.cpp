#include "magnitude/core/special.hpp"

#include <cmath>
#include <numbers>

#include "magnitude/core/errors.hpp"

namespace mag {

namespace {
// Two-step recursion up to here (exact at n = 0, 1), log-gamma above.
constexpr int kRecursionLimit = 32;
}  // namespace

double omega(int n) {
  if (n < 0) throw InvalidArgument("omega: n must be nonnegative");
  if (n <= kRecursionLimit) {
    double w = (n % 2 == 0) ? 1.0 : 2.0;
    for (int j = (n % 2 == 0) ? 2 : 3; j <= n; j += 2) w *= 2.0 * std::numbers::pi / j;
    return w;
  }
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(1.0 + half));
}

Rational half_binomial(const Rational& x, unsigned k) {
  Rational acc(1);
  for (unsigned i = 0; i < k; ++i) {
    acc *= x - Rational(static_cast<long>(i));
    acc /= Rational(static_cast<long>(i + 1));
  }
  return acc;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double factorial_d(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace mag
