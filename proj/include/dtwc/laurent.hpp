#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dtwc/rational.hpp"

namespace dtwc {

// Exponent vector of a Laurent monomial q^e.
using Exponent = std::vector<std::int64_t>;

Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a);
Exponent scaled(const Exponent& a, std::int64_t k);
Exponent zero_exponent(std::size_t n);
Exponent unit_exponent(std::size_t n, std::size_t i);

// Rational-valued linear form on exponent vectors.
class LinearFunctional {
 public:
  LinearFunctional() = default;
  explicit LinearFunctional(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {}
  static LinearFunctional from_integers(const IntVector& v);

  std::size_t dim() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational operator()(const Exponent& e) const;

  friend bool operator==(const LinearFunctional& a, const LinearFunctional& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LinearFunctional& a, const LinearFunctional& b) { return !(a == b); }

 private:
  std::vector<Rational> coeffs_;
};

// Finite sum of rational multiples of Laurent monomials in nvars variables.
// Zero coefficients are never stored.
class LaurentPolynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit LaurentPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static LaurentPolynomial monomial(Exponent e, const Rational& c = 1);
  static LaurentPolynomial constant(std::size_t nvars, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const Exponent& e) const;

  // Adds c*q^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Rational& c);

  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const Rational& c);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
  friend LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a) { return a *= c; }
  LaurentPolynomial operator-() const;
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

  LaurentPolynomial pow(unsigned k) const;
  LaurentPolynomial shifted(const Exponent& e) const;

  // Image under the monomial map q_i -> q^{images[i]} into target_nvars variables.
  LaurentPolynomial substitute(const std::vector<Exponent>& images, std::size_t target_nvars) const;

  // Evaluation at an integer point; only valid for nonnegative exponents.
  Rational evaluate(const IntVector& point) const;

  // Extremes of L over the support. Undefined on the zero polynomial.
  Rational min_value(const LinearFunctional& L) const;
  Rational max_value(const LinearFunctional& L) const;
  std::vector<Exponent> minimizers(const LinearFunctional& L) const;

  // Maximal exponent of variable i (nonnegative polynomials), -1 for zero.
  std::int64_t degree_in(std::size_t i) const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

// Exact divisibility in the Laurent ring. On success the quotient is stored.
bool divides(const LaurentPolynomial& divisor, const LaurentPolynomial& dividend,
             LaurentPolynomial* quotient = nullptr);

// g/h kept exactly as given (no gcd normalization).
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(LaurentPolynomial::constant(0, 1)) {}
  RationalFunction(LaurentPolynomial numerator, LaurentPolynomial denominator);
  static RationalFunction polynomial(LaurentPolynomial p);

  const LaurentPolynomial& numerator() const { return num_; }
  const LaurentPolynomial& denominator() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  RationalFunction scaled(const Rational& c) const;
  RationalFunction times_monomial(const Exponent& e) const;

  // g1*h2 - g2*h1, zero iff the fractions agree as rational functions.
  LaurentPolynomial cross_difference(const RationalFunction& other) const;
  bool same_function(const RationalFunction& other) const { return cross_difference(other).is_zero(); }

 private:
  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

}  // namespace dtwc
