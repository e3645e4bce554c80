#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mag {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit on purpose
  Rational(long num, long den);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }
  /// Lossless "p/q" form; integers print without a denominator.
  std::string str() const;

  Rational inverse() const;
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational factorial(unsigned n);

/// Polynomial in t with exact rational coefficients; index = degree.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(const Rational& constant);  // NOLINT
  static Polynomial monomial(const Rational& c, std::size_t degree);
  /// The indeterminate t.
  static Polynomial t();

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of t^i, zero past the degree.
  Rational coefficient(std::size_t i) const;

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  Polynomial derivative() const;

  /// Number of leading zero coefficients at t = 0 (the t-adic valuation).
  std::size_t valuation() const;
  /// Divides by t^k; the low k coefficients must be zero.
  Polynomial shift_down(std::size_t k) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  struct DivMod;
  /// Euclidean division; throws DivisionByZero for a zero divisor.
  DivMod divmod(const Polynomial& divisor) const;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct Polynomial::DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Quotient of two polynomials. Common factors of t are cancelled so that
/// den(0) != 0 whenever the function is defined at 0.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Throws DivisionByZero when den(t) = 0.
  Rational operator()(const Rational& t) const;
  double operator()(double t) const;

  /// Polynomial part of the expansion at t -> infinity.
  Polynomial polynomial_part() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace mag
