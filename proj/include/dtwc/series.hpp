#pragma once

#include <optional>
#include <utility>

#include "dtwc/laurent.hpp"

namespace dtwc {

// Half-space {e : functional(e) <= bound}.
struct Window {
  LinearFunctional functional;
  Rational bound;

  bool contains(const Exponent& e) const { return functional(e) <= bound; }
};

// Truncated Laurent series. Coefficients are exact on the whole window and
// unknown beyond it.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(std::size_t nvars, Window window) : window_(std::move(window)), terms_(nvars) {}
  // Keeps only the terms of p inside the window.
  static LaurentSeries from_polynomial(const LaurentPolynomial& p, Window window);

  const Window& window() const { return window_; }
  const LaurentPolynomial& polynomial() const { return terms_; }
  std::size_t nvars() const { return terms_.nvars(); }
  Rational coeff(const Exponent& e) const { return terms_.coeff(e); }
  bool is_zero() const { return terms_.is_zero(); }

  // Throws if e lies outside the window.
  void add_term(const Exponent& e, const Rational& c);

  // Smallest functional value among stored terms, capped by the bound.
  Rational lowest_level() const;

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.window_.functional == b.window_.functional && a.window_.bound == b.window_.bound &&
           a.terms_ == b.terms_;
  }

 private:
  Window window_;
  LaurentPolynomial terms_;
};

LaurentSeries expand(const RationalFunction& f, const Window& window);

// First term of s*h - g inside the provably final region, if any.
std::optional<std::pair<Exponent, Rational>> expansion_discrepancy(const LaurentSeries& s, const RationalFunction& f);
bool verify_expansion(const LaurentSeries& s, const RationalFunction& f);

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries subtract(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, const LinearFunctional& L);
LaurentSeries restrict(const LaurentSeries& s, const Rational& bound);

// Equality on the intersection of the two windows.
bool agree(const LaurentSeries& a, const LaurentSeries& b);

}  // namespace dtwc
