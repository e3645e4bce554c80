#include "magnitude/core/rational.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "magnitude/core/errors.hpp"

namespace mag {

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  value_ = mpq_class(mpz_class(num), mpz_class(den));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  if (sgn(value_.get_den()) == 0) throw DivisionByZero("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  mpz_class num;
  mpz_class den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0)
    throw InvalidArgument("malformed rational: " + s);
  if (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0)
    throw InvalidArgument("malformed rational: " + s);
  if (sgn(den) == 0) throw DivisionByZero("rational with zero denominator: " + s);
  return Rational(mpq_class(num, den));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero rational");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::t() { return monomial(1, 1); }

Rational Polynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational();
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

std::size_t Polynomial::valuation() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k].is_zero()) ++k;
  return k;
}

Polynomial Polynomial::shift_down(std::size_t k) const {
  if (k > valuation() && !is_zero()) throw InvalidArgument("shift_down would drop nonzero terms");
  if (k >= coeffs_.size()) return {};
  return Polynomial(std::vector<Rational>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  DivMod out;
  Polynomial rem = *this;
  const int dd = divisor.degree();
  const Rational lead = divisor.coeffs_.back();
  if (degree() < dd) {
    out.remainder = rem;
    return out;
  }
  std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1));
  while (!rem.is_zero() && rem.degree() >= dd) {
    const auto shift = static_cast<std::size_t>(rem.degree() - dd);
    const Rational c = rem.coeffs_.back() / lead;
    q[shift] = c;
    rem -= monomial(c, shift) * divisor;
  }
  out.quotient = Polynomial(std::move(q));
  out.remainder = std::move(rem);
  return out;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i];
    if (i >= 1) os << "*t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// --- RationalFunction -------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  const std::size_t common = num_.is_zero() ? den_.valuation() : std::min(num_.valuation(), den_.valuation());
  if (common > 0) {
    num_ = num_.shift_down(std::min(common, num_.is_zero() ? common : num_.valuation()));
    den_ = den_.shift_down(common);
  }
}

Rational RationalFunction::operator()(const Rational& t) const {
  const Rational d = den_(t);
  if (d.is_zero()) throw DivisionByZero("rational function pole at t = " + t.str());
  return num_(t) / d;
}

double RationalFunction::operator()(double t) const {
  const double d = den_(t);
  if (d == 0.0) throw DivisionByZero("rational function pole");
  return num_(t) / d;
}

Polynomial RationalFunction::polynomial_part() const { return num_.divmod(den_).quotient; }

}  // namespace mag
