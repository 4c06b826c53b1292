#include "dtwc/series.hpp"

#include <algorithm>
#include <map>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

void require_same_functional(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.window().functional != b.window().functional)
    throw Error(ErrorKind::Input, "series windows use different functionals");
  if (a.nvars() != b.nvars()) throw Error(ErrorKind::Dimension, "series in different variable counts");
}

// Remainder keyed by (L-value, exponent) so the front is the next term to eliminate.
using Queue = std::map<std::pair<Rational, Exponent>, Rational>;

void push(Queue& q, const LinearFunctional& L, const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = q.try_emplace({L(e), e}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) q.erase(it);
  }
}

// Long division of g by h in increasing L-order; h has the unique L-minimal
// term (e0, h0). Quotient terms are produced up to `bound`.
LaurentPolynomial long_divide(const LaurentPolynomial& g, const LaurentPolynomial& h, const Exponent& e0,
                              const LinearFunctional& L, const Rational& bound) {
  const Rational lambda0 = L(e0);
  const Rational h0 = h.coeff(e0);
  Queue rem;
  for (const auto& [e, c] : g.terms()) push(rem, L, e, c);
  LaurentPolynomial q(g.nvars());
  while (!rem.empty()) {
    auto it = rem.begin();
    if (it->first.first - lambda0 > bound) break;
    Exponent shift = it->first.second - e0;
    Rational c = it->second / h0;
    q.add_term(shift, c);
    for (const auto& [he, hc] : h.terms()) push(rem, L, he + shift, -c * hc);
  }
  return q;
}

}  // namespace

LaurentSeries LaurentSeries::from_polynomial(const LaurentPolynomial& p, Window window) {
  LaurentSeries s(p.nvars(), std::move(window));
  for (const auto& [e, c] : p.terms())
    if (s.window_.contains(e)) s.terms_.add_term(e, c);
  return s;
}

void LaurentSeries::add_term(const Exponent& e, const Rational& c) {
  if (!window_.contains(e)) throw Error(ErrorKind::Input, "term lies outside the series window");
  terms_.add_term(e, c);
}

Rational LaurentSeries::lowest_level() const {
  if (terms_.is_zero()) return window_.bound;
  return std::min<Rational>(terms_.min_value(window_.functional), window_.bound);
}

LaurentSeries expand(const RationalFunction& f, const Window& window) {
  const auto& L = window.functional;
  const auto& h = f.denominator();
  if (L.dim() != f.nvars()) throw Error(ErrorKind::Dimension, "functional does not match the variable count");
  auto mins = h.minimizers(L);
  if (mins.size() != 1) throw Error(ErrorKind::NonGenericDenominator, "functional not generic for denominator");
  const auto& g = f.numerator();
  LaurentSeries s(f.nvars(), window);
  if (g.is_zero()) return s;
  if (window.bound < g.min_value(L) - L(mins.front()))
    throw Error(ErrorKind::EmptyWindow, "empty window");
  auto q = long_divide(g, h, mins.front(), L, window.bound);
  return LaurentSeries::from_polynomial(q, window);
}

std::optional<std::pair<Exponent, Rational>> expansion_discrepancy(const LaurentSeries& s, const RationalFunction& f) {
  const auto& L = s.window().functional;
  const auto& h = f.denominator();
  if (L.dim() != f.nvars() || s.nvars() != f.nvars())
    throw Error(ErrorKind::Dimension, "series and fraction in different variable counts");
  // Terms of s*h - g up to bound + min L(h) only involve known coefficients of s.
  const Rational limit = s.window().bound + h.min_value(L);
  LaurentPolynomial d = s.polynomial() * h - f.numerator();
  std::optional<std::pair<Rational, Exponent>> best;
  Rational value;
  for (const auto& [e, c] : d.terms()) {
    Rational v = L(e);
    if (v > limit) continue;
    std::pair<Rational, Exponent> key{v, e};
    if (!best || key < *best) {
      best = key;
      value = c;
    }
  }
  if (!best) return std::nullopt;
  return std::make_pair(best->second, value);
}

bool verify_expansion(const LaurentSeries& s, const RationalFunction& f) { return !expansion_discrepancy(s, f); }

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_functional(a, b);
  Window w{a.window().functional, std::min<Rational>(a.window().bound, b.window().bound)};
  return LaurentSeries::from_polynomial(a.polynomial() + b.polynomial(), w);
}

LaurentSeries subtract(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_functional(a, b);
  Window w{a.window().functional, std::min<Rational>(a.window().bound, b.window().bound)};
  return LaurentSeries::from_polynomial(a.polynomial() - b.polynomial(), w);
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_functional(a, b);
  const Rational ma = a.lowest_level(), mb = b.lowest_level();
  Window w{a.window().functional, std::min<Rational>(a.window().bound + mb, b.window().bound + ma)};
  return LaurentSeries::from_polynomial(a.polynomial() * b.polynomial(), w);
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, const LinearFunctional& L) {
  require_same_functional(a, b);
  if (a.window().functional != L) throw Error(ErrorKind::Input, "division functional differs from the series windows");
  if (b.is_zero()) throw Error(ErrorKind::NotInvertible, "not invertible with respect to L");
  auto mins = b.polynomial().minimizers(L);
  if (mins.size() != 1) throw Error(ErrorKind::NotInvertible, "not invertible with respect to L");
  const Rational lambda0 = L(mins.front());
  const Rational mu = a.lowest_level() - lambda0;
  const Rational bound = std::min<Rational>(a.window().bound - lambda0, b.window().bound + mu - lambda0);
  Window w{L, bound};
  if (a.is_zero()) return LaurentSeries(a.nvars(), w);
  auto q = long_divide(a.polynomial(), b.polynomial(), mins.front(), L, bound);
  return LaurentSeries::from_polynomial(q, w);
}

LaurentSeries restrict(const LaurentSeries& s, const Rational& bound) {
  Window w{s.window().functional, std::min<Rational>(bound, s.window().bound)};
  return LaurentSeries::from_polynomial(s.polynomial(), w);
}

bool agree(const LaurentSeries& a, const LaurentSeries& b) {
  require_same_functional(a, b);
  Rational bound = std::min<Rational>(a.window().bound, b.window().bound);
  return restrict(a, bound).polynomial() == restrict(b, bound).polynomial();
}

}  // namespace dtwc
