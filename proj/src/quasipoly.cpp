#include "dtwc/quasipoly.hpp"

#include <algorithm>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

IntVector residues_of(const IntVector& n, std::int64_t p) {
  IntVector r(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) r[i] = mod_floor(n[i], p);
  return r;
}

// P(y_1..y_{r-1}, value) as a polynomial in the first r-1 variables.
LaurentPolynomial specialize_last(const LaurentPolynomial& p, std::int64_t value) {
  const std::size_t r = p.nvars();
  LaurentPolynomial out(r - 1);
  Integer pw;
  for (const auto& [e, c] : p.terms()) {
    mpz_pow_ui(pw.get_mpz_t(), Integer(static_cast<long>(value)).get_mpz_t(), static_cast<unsigned long>(e.back()));
    out.add_term(Exponent(e.begin(), e.end() - 1), c * pw);
  }
  return out;
}

LaurentPolynomial append_variable(const LaurentPolynomial& p, std::int64_t power) {
  LaurentPolynomial out(p.nvars() + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent x = e;
    x.push_back(power);
    out.add_term(x, c);
  }
  return out;
}

// (1 - y^v)^k in n variables.
LaurentPolynomial one_minus_power(const Exponent& v, std::int64_t k) {
  LaurentPolynomial f = LaurentPolynomial::constant(v.size(), 1) - LaurentPolynomial::monomial(v);
  return f.pow(static_cast<unsigned>(std::max<std::int64_t>(k, 0)));
}

struct OrthantSum {
  LaurentPolynomial g;
  std::vector<std::int64_t> exps;  // h = prod (1 - y_i^p)^exps[i]
};

// Sum over n >= 0 of a(n) y^n in the abstract variables y, by multiplying with
// (y_r^{-p} - 1)^e, e = 1 + deg_r a, and recursing on the surviving negative strip.
OrthantSum orthant_abstract(const QuasiPolynomial& a) {
  const std::size_t r = a.vars();
  const std::int64_t p = a.period();
  OrthantSum out{LaurentPolynomial(r), std::vector<std::int64_t>(r)};
  for (std::size_t i = 0; i < r; ++i) out.exps[i] = std::max<std::int64_t>(0, 1 + qp_degree(a, i));
  if (r == 0) {
    out.g = a.at({});
    return out;
  }
  const std::int64_t e = out.exps[r - 1];
  if (e == 0) return out;
  for (std::int64_t m = -p * e; m <= -1; ++m) {
    QuasiPolynomial b(r - 1, p);
    const std::int64_t last = mod_floor(m, p);
    for (const auto& rho : residue_tuples(r - 1, p)) {
      IntVector full = rho;
      full.push_back(last);
      const auto& P = a.at(full);
      LaurentPolynomial acc(r - 1);
      for (std::int64_t j = 0; j <= e; ++j) {
        if (m + p * j < 0) continue;
        Integer c = binomial(static_cast<unsigned long>(e), static_cast<unsigned long>(j));
        if ((e - j) % 2 != 0) c = -c;
        acc += specialize_last(P, m + p * j) * Rational(c);
      }
      b.set(rho, acc);
    }
    OrthantSum sub = orthant_abstract(b);
    if (sub.g.is_zero()) continue;
    LaurentPolynomial g = sub.g;
    for (std::size_t i = 0; i + 1 < r; ++i)
      if (out.exps[i] > sub.exps[i])
        g = g * one_minus_power(scaled(unit_exponent(r - 1, i), p), out.exps[i] - sub.exps[i]);
    out.g += append_variable(g, p * e + m);
  }
  return out;
}

void check_monos(const std::vector<Exponent>& monos, std::size_t r, const LinearFunctional& grading) {
  if (monos.size() != r) throw Error(ErrorKind::Dimension, "need one monomial per quasi-polynomial variable");
  for (std::size_t i = 0; i < r; ++i) {
    if (monos[i].size() != grading.dim()) throw Error(ErrorKind::Dimension, "monomial has wrong length");
    if (grading(monos[i]) <= 0) throw Error(ErrorKind::Input, "monomial must have positive degree");
  }
}

// Polynomial P composed with n = off + M k, where column t of M is the
// indicator of {j >= start[t]}.
LaurentPolynomial compose_chain(const LaurentPolynomial& P, const IntVector& off, const std::vector<std::size_t>& start,
                                std::size_t s) {
  const std::size_t r = off.size();
  std::vector<LaurentPolynomial> lin;
  for (std::size_t j = 0; j < r; ++j) {
    LaurentPolynomial l = LaurentPolynomial::constant(s, static_cast<long>(off[j]));
    for (std::size_t t = 0; t < s; ++t)
      if (start[t] <= j) l.add_term(unit_exponent(s, t), 1);
    lin.push_back(l);
  }
  LaurentPolynomial out(s);
  for (const auto& [e, c] : P.terms()) {
    LaurentPolynomial term = LaurentPolynomial::constant(s, c);
    for (std::size_t j = 0; j < r; ++j)
      if (e[j] > 0) term = term * lin[j].pow(static_cast<unsigned>(e[j]));
    out += term;
  }
  return out;
}

struct ChainData {
  std::vector<std::size_t> start;  // 0-based first index each free variable feeds
  IntVector off;                   // constant shift of n_j
};

ChainData chain_data(const ChainPattern& pattern) {
  const std::size_t r = pattern.r;
  for (auto i : pattern.E)
    if (i < 1 || i >= r) throw Error(ErrorKind::Input, "equality position outside 1..r-1");
  ChainData d;
  d.off.assign(r, 0);
  d.start.push_back(0);
  for (std::size_t i = 1; i < r; ++i)
    if (!pattern.E.count(i)) d.start.push_back(i);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 1; i <= j; ++i)
      if (!pattern.E.count(i)) ++d.off[j];
  return d;
}

}  // namespace

QuasiPolynomial::QuasiPolynomial(std::size_t vars, std::int64_t period) : vars_(vars), period_(period) {
  if (period < 1) throw Error(ErrorKind::Input, "period must be at least 1");
  for (const auto& rho : residue_tuples(vars, period)) table_.emplace(rho, LaurentPolynomial(vars));
}

const LaurentPolynomial& QuasiPolynomial::at(const IntVector& residues) const {
  auto it = table_.find(residues);
  if (it == table_.end()) throw Error(ErrorKind::Input, "residue tuple outside (Z/p)^r");
  return it->second;
}

void QuasiPolynomial::set(const IntVector& residues, LaurentPolynomial p) {
  auto it = table_.find(residues);
  if (it == table_.end()) throw Error(ErrorKind::Input, "residue tuple outside (Z/p)^r");
  if (p.nvars() != vars_) throw Error(ErrorKind::Dimension, "residue polynomial has wrong variable count");
  for (const auto& [e, c] : p.terms())
    for (auto x : e)
      if (x < 0) throw Error(ErrorKind::Input, "quasi-polynomial entries must be polynomials");
  it->second = std::move(p);
}

QuasiPolynomial QuasiPolynomial::polynomial(const LaurentPolynomial& p, std::int64_t period) {
  QuasiPolynomial q(p.nvars(), period);
  for (const auto& rho : residue_tuples(p.nvars(), period)) q.set(rho, p);
  return q;
}

std::vector<IntVector> residue_tuples(std::size_t r, std::int64_t p) {
  std::vector<IntVector> out{IntVector{}};
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<IntVector> next;
    for (const auto& t : out)
      for (std::int64_t x = 0; x < p; ++x) {
        IntVector u = t;
        u.push_back(x);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

Rational qp_eval(const QuasiPolynomial& a, const IntVector& n) {
  if (n.size() != a.vars()) throw Error(ErrorKind::Dimension, "evaluation point has wrong length");
  return a.at(residues_of(n, a.period())).evaluate(n);
}

std::int64_t qp_degree(const QuasiPolynomial& a, std::size_t i) {
  std::int64_t d = -1;
  for (const auto& [rho, p] : a.table()) d = std::max(d, p.degree_in(i));
  return d;
}

RationalFunction resum_orthant(const QuasiPolynomial& a, const std::vector<Exponent>& monos,
                               const LinearFunctional& grading) {
  const std::size_t r = a.vars();
  check_monos(monos, r, grading);
  const std::size_t n = grading.dim();
  OrthantSum s = orthant_abstract(a);
  LaurentPolynomial h = LaurentPolynomial::constant(n, 1);
  for (std::size_t i = 0; i < r; ++i) h = h * one_minus_power(scaled(monos[i], a.period()), s.exps[i]);
  return RationalFunction(s.g.substitute(monos, n), h);
}

RationalFunction resum_chain(const QuasiPolynomial& a, const ChainPattern& pattern, const std::vector<Exponent>& monos,
                             const LinearFunctional& grading) {
  const std::size_t r = a.vars();
  if (pattern.r != r) throw Error(ErrorKind::Dimension, "chain length differs from the quasi-polynomial");
  check_monos(monos, r, grading);
  const std::int64_t p = a.period();
  ChainData d = chain_data(pattern);
  const std::size_t s = d.start.size();
  QuasiPolynomial b(s, p);
  for (const auto& rho : residue_tuples(s, p)) {
    IntVector nres(r);
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t v = d.off[j];
      for (std::size_t t = 0; t < s; ++t)
        if (d.start[t] <= j) v += rho[t];
      nres[j] = mod_floor(v, p);
    }
    b.set(rho, compose_chain(a.at(nres), d.off, d.start, s));
  }
  const std::size_t n = grading.dim();
  std::vector<Exponent> tails;
  for (std::size_t t = 0; t < s; ++t) {
    Exponent q(n, 0);
    for (std::size_t j = d.start[t]; j < r; ++j) q = q + monos[j];
    tails.push_back(q);
  }
  Exponent pre(n, 0);
  for (std::size_t j = 0; j < r; ++j) pre = pre + scaled(monos[j], d.off[j]);
  return resum_orthant(b, tails, grading).times_monomial(pre);
}

LaurentPolynomial orthant_lemma_denominator(const QuasiPolynomial& a, const std::vector<Exponent>& monos) {
  if (monos.empty()) throw Error(ErrorKind::Input, "no monomials");
  LaurentPolynomial h = LaurentPolynomial::constant(monos.front().size(), 1);
  for (std::size_t i = 0; i < a.vars(); ++i)
    h = h * one_minus_power(scaled(monos.at(i), a.period()), 1 + qp_degree(a, i));
  return h;
}

LaurentPolynomial chain_lemma_denominator(const QuasiPolynomial& a, const ChainPattern& pattern,
                                          const std::vector<Exponent>& monos) {
  const std::size_t r = a.vars();
  if (monos.size() != r || r == 0) throw Error(ErrorKind::Dimension, "need one monomial per variable");
  const std::size_t n = monos.front().size();
  LaurentPolynomial h = LaurentPolynomial::constant(n, 1);
  for (std::size_t i = 0; i < r; ++i) {
    if (pattern.E.count(i)) continue;
    Exponent q(n, 0);
    std::int64_t e = 1;
    for (std::size_t j = i; j < r; ++j) {
      q = q + monos[j];
      e += qp_degree(a, j);
    }
    h = h * one_minus_power(scaled(q, a.period()), e);
  }
  return h;
}

const char* to_string(DetectFailure f) { return f == DetectFailure::WindowTooSmall ? "window too small" : "no fit"; }

DetectResult detect_quasipoly(const std::map<std::int64_t, Rational>& samples, std::int64_t max_period,
                              std::int64_t max_degree) {
  if (max_period < 1 || max_degree < 0) throw Error(ErrorKind::Input, "search bounds must be positive");
  if (!samples.empty() && samples.rbegin()->first - samples.begin()->first + 1 != static_cast<std::int64_t>(samples.size()))
    throw Error(ErrorKind::Input, "samples must cover a contiguous range");
  bool tested = false;
  for (std::int64_t p = 1; p <= max_period; ++p) {
    std::vector<std::vector<std::pair<std::int64_t, Rational>>> classes(static_cast<std::size_t>(p));
    for (const auto& [n, v] : samples) classes[static_cast<std::size_t>(mod_floor(n, p))].emplace_back(n, v);
    for (std::int64_t d = 0; d <= max_degree; ++d) {
      bool enough = std::all_of(classes.begin(), classes.end(),
                                [&](const auto& cl) { return static_cast<std::int64_t>(cl.size()) >= d + 2; });
      if (!enough) break;
      tested = true;
      QuasiPolynomial q(1, p);
      bool fits = true;
      for (std::int64_t rho = 0; rho < p && fits; ++rho) {
        const auto& cl = classes[static_cast<std::size_t>(rho)];
        const std::size_t k = static_cast<std::size_t>(d + 1);
        // Newton form on the first d+1 points of the class.
        std::vector<Rational> dd(k);
        for (std::size_t i = 0; i < k; ++i) dd[i] = cl[i].second;
        for (std::size_t level = 1; level < k; ++level)
          for (std::size_t i = k - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(cl[i].first - cl[i - level].first));
        LaurentPolynomial poly(1), basis = LaurentPolynomial::constant(1, 1);
        for (std::size_t i = 0; i < k; ++i) {
          poly += basis * dd[i];
          basis = basis * (LaurentPolynomial::monomial({1}) - LaurentPolynomial::constant(1, static_cast<long>(cl[i].first)));
        }
        for (std::size_t i = k; i < cl.size(); ++i)
          if (poly.evaluate({cl[i].first}) != cl[i].second) {
            fits = false;
            break;
          }
        if (fits) q.set({rho}, poly);
      }
      if (fits) return q;
    }
  }
  return tested ? DetectFailure::NoFit : DetectFailure::WindowTooSmall;
}

ReexpandVerdict reexpand_check(const RationalFunction& f, const LaurentSeries& s_minus, const LaurentSeries& s_plus,
                               const Exponent& c0, const LinearFunctional& Lminus, const LinearFunctional& Lplus,
                               std::int64_t max_period, std::int64_t max_degree) {
  if (c0.size() != f.nvars() || s_minus.nvars() != f.nvars() || s_plus.nvars() != f.nvars())
    throw Error(ErrorKind::Dimension, "re-expansion data in different variable counts");
  const Rational lm = Lminus(c0), lp = Lplus(c0);
  if (!(lm < 0 && lp > 0)) throw Error(ErrorKind::Input, "need Lminus(c0) < 0 < Lplus(c0)");
  if (s_minus.window().functional != Lminus || s_plus.window().functional != Lplus)
    throw Error(ErrorKind::Input, "series windows must use Lminus and Lplus");

  ReexpandVerdict v;
  v.premise_verified = verify_expansion(s_minus, f);

  std::size_t pivot = 0;
  while (c0[pivot] == 0) ++pivot;
  const std::int64_t step = c0[pivot] < 0 ? -c0[pivot] : c0[pivot];
  std::set<Exponent> reps;
  auto canonical = [&](const Exponent& e) {
    std::int64_t k = (e[pivot] - mod_floor(e[pivot], step)) / c0[pivot];
    return e - scaled(c0, k);
  };
  for (const auto& [e, c] : s_minus.polynomial().terms()) reps.insert(canonical(e));
  for (const auto& [e, c] : s_plus.polynomial().terms()) reps.insert(canonical(e));

  v.all_fit = true;
  for (const auto& rep : reps) {
    CosetReport cr;
    cr.representative = rep;
    cr.k_min = to_int64(ceil_of((s_minus.window().bound - Lminus(rep)) / lm));
    cr.k_max = to_int64(floor_of((s_plus.window().bound - Lplus(rep)) / lp));
    std::map<std::int64_t, Rational> samples;
    for (std::int64_t k = cr.k_min; k <= cr.k_max; ++k) {
      Exponent e = rep + scaled(c0, k);
      samples[k] = s_plus.coeff(e) - s_minus.coeff(e);
    }
    cr.fit = detect_quasipoly(samples, max_period, max_degree);
    if (!std::holds_alternative<QuasiPolynomial>(cr.fit)) v.all_fit = false;
    v.cosets.push_back(std::move(cr));
  }
  if (v.all_fit) {
    v.plus_discrepancy = expansion_discrepancy(s_plus, f);
    v.plus_verified = !v.plus_discrepancy;
  }
  v.confirmed = v.premise_verified && v.all_fit && v.plus_verified;
  return v;
}

}  // namespace dtwc
