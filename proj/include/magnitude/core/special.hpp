#pragma once

#include "magnitude/core/rational.hpp"

namespace mag {

/// Volume of the Euclidean unit ball in R^n: pi^{n/2} / Gamma(1 + n/2).
double omega(int n);

/// Generalized binomial coefficient x(x-1)...(x-k+1)/k!, with C(x, 0) = 1.
/// Exact for any rational x; the half-integer case is the one used for balls.
Rational half_binomial(const Rational& x, unsigned k);

/// Ordinary binomial coefficient C(n, k) as a double.
double binomial(int n, int k);

/// k! as a double.
double factorial_d(int k);

}  // namespace mag
