#pragma once

// Brute-force references used by the tests. None of these call the library's
// expansion, resummation or wall-crossing code.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "dtwc/lattice.hpp"
#include "dtwc/laurent.hpp"
#include "dtwc/poisson.hpp"
#include "dtwc/quasipoly.hpp"
#include "dtwc/rational.hpp"
#include "dtwc/wallcross.hpp"

namespace oracle {

using dtwc::Exponent;
using dtwc::IntMatrix;
using dtwc::IntVector;
using dtwc::LaurentPolynomial;
using dtwc::Rational;
using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Rational small_rational(Rng& rng, std::int64_t range = 5) {
  Rational x(static_cast<long>(uniform(rng, -range, range)), static_cast<unsigned long>(uniform(rng, 1, 3)));
  x.canonicalize();
  return x;
}

// Coefficients c_0..c_n of g/h as a power series in one variable, h_0 != 0:
// c_k = (g_k - sum_{j>=1} h_j c_{k-j}) / h_0.
inline std::vector<Rational> power_series(const std::vector<Rational>& g, const std::vector<Rational>& h, int n) {
  std::vector<Rational> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rational acc = k < static_cast<int>(g.size()) ? g[k] : Rational(0);
    for (int j = 1; j <= k && j < static_cast<int>(h.size()); ++j) acc -= h[j] * c[k - j];
    c[k] = acc / h[0];
  }
  return c;
}

// x^T M y on the flattened (r, beta, c) vectors.
inline std::int64_t chi(const IntMatrix& m, const dtwc::KClass& a, const dtwc::KClass& b) {
  IntVector va{a.r}, vb{b.r};
  va.insert(va.end(), a.beta.begin(), a.beta.end());
  va.insert(va.end(), a.c.begin(), a.c.end());
  vb.insert(vb.end(), b.beta.begin(), b.beta.end());
  vb.insert(vb.end(), b.c.begin(), b.c.end());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < va.size(); ++i)
    for (std::size_t j = 0; j < vb.size(); ++j) s += va[i] * m[i][j] * vb[j];
  return s;
}

inline Rational sign_power(int sigma, std::int64_t k) { return (sigma == -1 && (k % 2 != 0)) ? Rational(-1) : Rational(1); }

inline Rational qp_value(const dtwc::QuasiPolynomial& a, const IntVector& n) {
  IntVector rho(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) rho[i] = ((n[i] % a.period()) + a.period()) % a.period();
  Rational v = 0;
  for (const auto& [e, c] : a.at(rho).terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::int64_t k = 0; k < e[i]; ++k) t *= static_cast<long>(n[i]);
    v += t;
  }
  return v;
}

inline Rational grade(const std::vector<Rational>& L, const Exponent& e) {
  Rational s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += L[i] * static_cast<long>(e[i]);
  return s;
}

// sum of a(n) q^{sum n_i m_i} over 0 <= n_1 <= ... <= n_r (strict unless i in E,
// equal if i in E), truncated to grade <= D. E empty and chain = false gives the orthant.
inline LaurentPolynomial partial_sum(const dtwc::QuasiPolynomial& a, const std::vector<Exponent>& monos,
                                     const std::vector<Rational>& L, const Rational& D, bool chain,
                                     const std::set<std::size_t>& E) {
  const std::size_t r = monos.size(), n = L.size();
  LaurentPolynomial out(n);
  IntVector idx(r, 0);
  std::function<void(std::size_t, Exponent)> walk = [&](std::size_t i, Exponent e) {
    if (i == r) {
      out.add_term(e, qp_value(a, idx));
      return;
    }
    std::int64_t lo = 0;
    if (chain && i > 0) lo = E.count(i) ? idx[i - 1] : idx[i - 1] + 1;
    for (std::int64_t k = lo;; ++k) {
      if (chain && i > 0 && E.count(i) && k > lo) break;
      idx[i] = k;
      Exponent f = e;
      for (std::size_t t = 0; t < n; ++t) f[t] += k * monos[i][t];
      // every later variable only adds nonnegative grade, and n_j >= k.
      Rational floor_grade = grade(L, f);
      if (chain)
        for (std::size_t j = i + 1; j < r; ++j) floor_grade += grade(L, monos[j]) * static_cast<long>(k);
      if (floor_grade > D) break;
      walk(i + 1, f);
    }
  };
  walk(0, Exponent(n, 0));
  LaurentPolynomial trimmed(n);
  for (const auto& [e, c] : out.terms())
    if (grade(L, e) <= D) trimmed.add_term(e, c);
  return trimmed;
}

// Group contribution summed directly over twist multiplicities.
inline LaurentPolynomial group_partial_sum(const dtwc::Lattice& lat, const dtwc::GroupSpec& g, std::int64_t amax) {
  const std::size_t r = g.betas.size(), n = lat.rank0();
  const IntMatrix& M = lat.spec().pairing;
  Rational pref = g.DT_value;
  for (const auto& j : g.J_values) pref *= j;
  // 1/prod(block sizes)!
  std::size_t block = 0;
  for (std::size_t i = 1; i <= r; ++i) {
    ++block;
    if (i == r || !g.E.count(i)) {
      for (std::size_t k = 2; k <= block; ++k) pref /= static_cast<long>(k);
      block = 0;
    }
  }
  LaurentPolynomial out(n);
  IntVector a(r, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == r) {
      dtwc::KClass y = g.alpha_prime;
      Rational b = 1;
      std::int64_t total = 0;
      Exponent e = g.alpha_prime.c;
      for (std::size_t k = 0; k < r; ++k) {
        IntVector t = lat.twist(g.betas[k]);
        IntVector c = g.kappas[k];
        for (std::size_t s = 0; s < n; ++s) c[s] += a[k] * t[s];
        dtwc::KClass x{0, g.betas[k], c};
        std::int64_t ch = chi(M, x, y);
        b *= static_cast<long>(ch);
        total += ch;
        y = y + x;
        for (std::size_t s = 0; s < n; ++s) e[s] += c[s];
      }
      out.add_term(e, pref * b * sign_power(lat.sigma(), total));
      return;
    }
    std::int64_t lo = 0, hi = amax;
    if (i > 0) {
      lo = g.E.count(i) ? a[i - 1] : a[i - 1] + 1;
      if (g.E.count(i)) hi = lo;
    }
    for (std::int64_t k = lo; k <= hi; ++k) {
      a[i] = k;
      walk(i + 1);
    }
  };
  walk(0);
  return out;
}

// Direct sum_k ad_w^k(x)/k! with a fixed number of steps, bracket from the
// pairing matrix and the truncation applied after every step.
inline std::map<dtwc::KClass, Rational> exp_ad_direct(const dtwc::Lattice& lat, const std::map<dtwc::KClass, Rational>& w,
                                                     const std::map<dtwc::KClass, Rational>& x,
                                                     const dtwc::Truncation& tr, int steps) {
  std::map<dtwc::KClass, Rational> total, term = x;
  for (const auto& [a, c] : x)
    if (tr.admits(lat, a)) total[a] += c;
  for (int k = 1; k <= steps; ++k) {
    std::map<dtwc::KClass, Rational> next;
    for (const auto& [a, ca] : w)
      for (const auto& [b, cb] : term) {
        std::int64_t ch = chi(lat.spec().pairing, a, b);
        dtwc::KClass s = a + b;
        if (ch == 0 || !tr.admits(lat, s)) continue;
        next[s] += ca * cb * sign_power(lat.sigma(), ch) * Rational(static_cast<long>(ch)) / Rational(static_cast<long>(k));
      }
    term = next;
    for (const auto& [a, c] : term) total[a] += c;
  }
  for (auto it = total.begin(); it != total.end();) it = it->second == 0 ? total.erase(it) : std::next(it);
  return total;
}

}  // namespace oracle
