#pragma once

#include <map>
#include <optional>
#include <set>

#include "dtwc/lattice.hpp"

namespace dtwc {

// Finite combination of torus monomials t^alpha over one lattice.
class TorusElement {
 public:
  using TermMap = std::map<KClass, Rational>;

  TorusElement() = default;
  explicit TorusElement(LatticePtr lattice) : lattice_(std::move(lattice)) {}
  static TorusElement monomial(LatticePtr lattice, const KClass& a, const Rational& c = 1);

  const LatticePtr& lattice() const { return lattice_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const KClass& a) const;
  void add_term(const KClass& a, const Rational& c);

  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement& operator*=(const Rational& c);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(TorusElement a, const Rational& c) { return a *= c; }
  TorusElement operator-() const;
  friend bool operator==(const TorusElement& a, const TorusElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const TorusElement& a, const TorusElement& b) { return !(a == b); }

 private:
  LatticePtr lattice_;
  TermMap terms_;
};

// Classes kept: rank in rank_set, 0 <= beta <= beta_cap, deg(c) <= deg_bound.
struct Truncation {
  IntVector beta_cap;
  std::set<std::int64_t> rank_set{0, -1};
  std::optional<Rational> deg_bound;

  bool admits(const Lattice& lat, const KClass& a) const;
};

TorusElement truncate(const TorusElement& x, const Truncation& trunc);

TorusElement bracket(const TorusElement& x, const TorusElement& y, const Truncation& trunc);
TorusElement star(const TorusElement& x, const TorusElement& y, const Truncation& trunc);
// Plain monomial product t^a t^b = t^{a+b}.
TorusElement naive_product(const TorusElement& x, const TorusElement& y, const Truncation& trunc);

// sum_k ad_w^k(x)/k!, with the number of steps bounded a priori.
TorusElement exp_ad(const TorusElement& w, const TorusElement& x, const Truncation& trunc);

}  // namespace dtwc
