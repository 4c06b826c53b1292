#include "dtwc/laurent.hpp"

#include <algorithm>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

void check_same_length(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Dimension, "exponent lengths " + std::to_string(a.size()) + " and " +
                                          std::to_string(b.size()) + " differ");
}

}  // namespace

Exponent operator+(const Exponent& a, const Exponent& b) {
  check_same_length(a, b);
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  check_same_length(a, b);
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exponent operator-(const Exponent& a) { return scaled(a, -1); }

Exponent scaled(const Exponent& a, std::int64_t k) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

Exponent zero_exponent(std::size_t n) { return Exponent(n, 0); }

Exponent unit_exponent(std::size_t n, std::size_t i) {
  Exponent e(n, 0);
  e.at(i) = 1;
  return e;
}

LinearFunctional LinearFunctional::from_integers(const IntVector& v) {
  std::vector<Rational> c;
  c.reserve(v.size());
  for (auto x : v) c.emplace_back(static_cast<long>(x));
  return LinearFunctional(std::move(c));
}

Rational LinearFunctional::operator()(const Exponent& e) const {
  if (e.size() != coeffs_.size())
    throw Error(ErrorKind::Dimension, "functional of dimension " + std::to_string(coeffs_.size()) +
                                          " applied to exponent of length " + std::to_string(e.size()));
  Rational r = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) r += coeffs_[i] * static_cast<long>(e[i]);
  return r;
}

LaurentPolynomial LaurentPolynomial::monomial(Exponent e, const Rational& c) {
  LaurentPolynomial p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t nvars, const Rational& c) {
  return monomial(Exponent(nvars, 0), c);
}

Rational LaurentPolynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_)
    throw Error(ErrorKind::Dimension, "term with " + std::to_string(e.size()) +
                                          " exponents added to polynomial in " + std::to_string(nvars_) +
                                          " variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::Dimension, "adding polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::Dimension, "subtracting polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorKind::Dimension, "multiplying polynomials in different variable counts");
  LaurentPolynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial result = constant(nvars_, 1);
  LaurentPolynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPolynomial LaurentPolynomial::shifted(const Exponent& e) const {
  LaurentPolynomial r(nvars_);
  for (const auto& [x, c] : terms_) r.terms_.emplace(x + e, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::substitute(const std::vector<Exponent>& images,
                                                std::size_t target_nvars) const {
  if (images.size() != nvars_)
    throw Error(ErrorKind::Dimension, "substitution needs one image per variable");
  for (const auto& im : images)
    if (im.size() != target_nvars) throw Error(ErrorKind::Dimension, "substitution image has wrong length");
  LaurentPolynomial r(target_nvars);
  for (const auto& [e, c] : terms_) {
    Exponent x(target_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0)
        for (std::size_t j = 0; j < target_nvars; ++j) x[j] += e[i] * images[i][j];
    r.add_term(x, c);
  }
  return r;
}

Rational LaurentPolynomial::evaluate(const IntVector& point) const {
  if (point.size() != nvars_) throw Error(ErrorKind::Dimension, "evaluation point has wrong length");
  Rational total = 0;
  Integer pw;
  for (const auto& [e, c] : terms_) {
    Integer m = 1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0) throw Error(ErrorKind::Input, "evaluation of a negative power");
      mpz_pow_ui(pw.get_mpz_t(), Integer(static_cast<long>(point[i])).get_mpz_t(),
                 static_cast<unsigned long>(e[i]));
      m *= pw;
    }
    total += c * m;
  }
  return total;
}

Rational LaurentPolynomial::min_value(const LinearFunctional& L) const {
  if (terms_.empty()) throw Error(ErrorKind::Input, "minimum of L over the zero polynomial");
  auto it = terms_.begin();
  Rational best = L(it->first);
  for (++it; it != terms_.end(); ++it) {
    Rational v = L(it->first);
    if (v < best) best = v;
  }
  return best;
}

Rational LaurentPolynomial::max_value(const LinearFunctional& L) const {
  if (terms_.empty()) throw Error(ErrorKind::Input, "maximum of L over the zero polynomial");
  auto it = terms_.begin();
  Rational best = L(it->first);
  for (++it; it != terms_.end(); ++it) {
    Rational v = L(it->first);
    if (v > best) best = v;
  }
  return best;
}

std::vector<Exponent> LaurentPolynomial::minimizers(const LinearFunctional& L) const {
  std::vector<Exponent> out;
  if (terms_.empty()) return out;
  Rational best = min_value(L);
  for (const auto& [e, c] : terms_)
    if (L(e) == best) out.push_back(e);
  return out;
}

std::int64_t LaurentPolynomial::degree_in(std::size_t i) const {
  std::int64_t d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(i));
  return d;
}

bool divides(const LaurentPolynomial& divisor, const LaurentPolynomial& dividend, LaurentPolynomial* quotient) {
  if (divisor.is_zero()) throw Error(ErrorKind::Input, "division by the zero polynomial");
  if (divisor.nvars() != dividend.nvars()) throw Error(ErrorKind::Dimension, "divisibility across variable counts");
  const std::size_t n = divisor.nvars();
  LaurentPolynomial q(n);
  if (dividend.is_zero()) {
    if (quotient) *quotient = q;
    return true;
  }
  // The quotient's per-variable exponent range is forced: lo(P)-lo(d) .. hi(P)-hi(d).
  Exponent lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t plo = INT64_MAX, phi = INT64_MIN, dlo = INT64_MAX, dhi = INT64_MIN;
    for (const auto& [e, c] : dividend.terms()) plo = std::min(plo, e[k]), phi = std::max(phi, e[k]);
    for (const auto& [e, c] : divisor.terms()) dlo = std::min(dlo, e[k]), dhi = std::max(dhi, e[k]);
    lo[k] = plo - dlo;
    hi[k] = phi - dhi;
    if (lo[k] > hi[k]) return false;
  }
  const auto& [lead_e, lead_c] = *divisor.terms().rbegin();
  LaurentPolynomial rem = dividend;
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    Exponent m = re - lead_e;
    for (std::size_t k = 0; k < n; ++k)
      if (m[k] < lo[k] || m[k] > hi[k]) return false;
    Rational factor = rc / lead_c;
    q.add_term(m, factor);
    rem -= divisor.shifted(m) * factor;
  }
  if (quotient) *quotient = q;
  return true;
}

RationalFunction::RationalFunction(LaurentPolynomial numerator, LaurentPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorKind::Input, "rational function with zero denominator");
  if (num_.nvars() != den_.nvars())
    throw Error(ErrorKind::Dimension, "numerator and denominator in different variable counts");
}

RationalFunction RationalFunction::polynomial(LaurentPolynomial p) {
  auto n = p.nvars();
  return RationalFunction(std::move(p), LaurentPolynomial::constant(n, 1));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction RationalFunction::scaled(const Rational& c) const { return RationalFunction(num_ * c, den_); }

RationalFunction RationalFunction::times_monomial(const Exponent& e) const {
  return RationalFunction(num_.shifted(e), den_);
}

LaurentPolynomial RationalFunction::cross_difference(const RationalFunction& other) const {
  return num_ * other.den_ - other.num_ * den_;
}

}  // namespace dtwc
