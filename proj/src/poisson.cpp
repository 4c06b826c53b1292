#include "dtwc/poisson.hpp"

#include <algorithm>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

const Lattice& shared_lattice(const TorusElement& x, const TorusElement& y) {
  if (!x.lattice() || !y.lattice() || x.lattice() != y.lattice())
    throw Error(ErrorKind::ContextMismatch, "torus elements belong to different lattices");
  return *x.lattice();
}

bool is_zero_vec(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

template <class Coefficient>
TorusElement pair_terms(const TorusElement& x, const TorusElement& y, const Truncation& trunc, Coefficient coef) {
  const Lattice& lat = shared_lattice(x, y);
  TorusElement out(x.lattice());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      Rational k = coef(lat.euler_pairing(a, b));
      if (k == 0) continue;
      KClass s = a + b;
      if (!trunc.admits(lat, s)) continue;
      out.add_term(s, k * ca * cb);
    }
  return out;
}

Rational sigma_power(int sigma, std::int64_t chi) { return (sigma == -1 && chi % 2 != 0) ? -1 : 1; }

}  // namespace

TorusElement TorusElement::monomial(LatticePtr lattice, const KClass& a, const Rational& c) {
  TorusElement x(std::move(lattice));
  x.add_term(a, c);
  return x;
}

Rational TorusElement::coeff(const KClass& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TorusElement::add_term(const KClass& a, const Rational& c) {
  if (!lattice_) throw Error(ErrorKind::ContextMismatch, "torus element without a lattice");
  lattice_->check(a);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  if (o.is_zero()) return *this;
  if (!lattice_) lattice_ = o.lattice_;
  shared_lattice(*this, o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) { return *this += -o; }

TorusElement& TorusElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, x] : terms_) x *= c;
  return *this;
}

TorusElement TorusElement::operator-() const {
  TorusElement r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

bool Truncation::admits(const Lattice& lat, const KClass& a) const {
  if (!rank_set.count(a.r)) return false;
  if (!lat.is_effective(a.beta) || !lat.leq_effective(a.beta, beta_cap)) return false;
  if (deg_bound && Rational(static_cast<long>(lat.deg0(a.c))) > *deg_bound) return false;
  return true;
}

TorusElement truncate(const TorusElement& x, const Truncation& trunc) {
  TorusElement out(x.lattice());
  for (const auto& [a, c] : x.terms())
    if (trunc.admits(*x.lattice(), a)) out.add_term(a, c);
  return out;
}

TorusElement bracket(const TorusElement& x, const TorusElement& y, const Truncation& trunc) {
  if (x.is_zero() || y.is_zero()) return TorusElement(x.lattice() ? x.lattice() : y.lattice());
  const int sigma = shared_lattice(x, y).sigma();
  return pair_terms(x, y, trunc, [&](std::int64_t chi) -> Rational { return sigma_power(sigma, chi) * Rational(static_cast<long>(chi)); });
}

TorusElement star(const TorusElement& x, const TorusElement& y, const Truncation& trunc) {
  if (x.is_zero() || y.is_zero()) return TorusElement(x.lattice() ? x.lattice() : y.lattice());
  const int sigma = shared_lattice(x, y).sigma();
  return pair_terms(x, y, trunc, [&](std::int64_t chi) -> Rational { return sigma_power(sigma, chi); });
}

TorusElement naive_product(const TorusElement& x, const TorusElement& y, const Truncation& trunc) {
  if (x.is_zero() || y.is_zero()) return TorusElement(x.lattice() ? x.lattice() : y.lattice());
  return pair_terms(x, y, trunc, [](std::int64_t) { return Rational(1); });
}

TorusElement exp_ad(const TorusElement& w, const TorusElement& x, const Truncation& trunc) {
  if (w.is_zero() || x.is_zero()) return x;
  const Lattice& lat = shared_lattice(w, x);
  // Each bracket with a w-term raises l(beta) by >= 1 or, for beta = 0 terms,
  // raises deg(c) by >= dmin; both are capped by the truncation.
  bool has_flat = false;
  Rational dmin = 0, drop = 0;
  for (const auto& [a, c] : w.terms()) {
    if (a.r != 0) throw Error(ErrorKind::NonNilpotent, "non-nilpotent adjoint under this truncation");
    if (is_zero_vec(a.beta)) {
      Rational d(static_cast<long>(lat.deg0(a.c)));
      if (d <= 0) throw Error(ErrorKind::NonNilpotent, "non-nilpotent adjoint under this truncation");
      dmin = has_flat ? std::min<Rational>(dmin, d) : d;
      has_flat = true;
    } else {
      if (!lat.is_effective(a.beta) || lat.l_of(a.beta) < 1)
        throw Error(ErrorKind::NonNilpotent, "non-nilpotent adjoint under this truncation");
      drop = std::max<Rational>(drop, Rational(static_cast<long>(-lat.deg0(a.c))));
    }
  }
  if (has_flat && !trunc.deg_bound) throw Error(ErrorKind::NonNilpotent, "non-nilpotent adjoint under this truncation");
  std::int64_t lx = lat.l_of(x.terms().begin()->first.beta);
  Rational dx(static_cast<long>(lat.deg0(x.terms().begin()->first.c)));
  for (const auto& [a, c] : x.terms()) {
    lx = std::min(lx, lat.l_of(a.beta));
    dx = std::min<Rational>(dx, Rational(static_cast<long>(lat.deg0(a.c))));
  }
  const std::int64_t beta_steps = std::max<std::int64_t>(0, lat.l_of(trunc.beta_cap) - lx);
  std::int64_t flat_steps = 0;
  if (has_flat) {
    Rational room = *trunc.deg_bound - dx + drop * static_cast<long>(beta_steps);
    flat_steps = std::max<std::int64_t>(0, to_int64(floor_of(room / dmin)));
  }
  const std::int64_t max_k = beta_steps + flat_steps + 1;

  TorusElement total = x, term = x;
  for (std::int64_t k = 1;; ++k) {
    term = bracket(w, term, trunc) * fraction(1, k);
    if (term.is_zero()) break;
    if (k > max_k) throw Error(ErrorKind::NonNilpotent, "non-nilpotent adjoint under this truncation");
    total += term;
  }
  return total;
}

}  // namespace dtwc
