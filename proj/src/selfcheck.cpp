#include "dtwc/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "dtwc/a1_model.hpp"
#include "dtwc/error.hpp"
#include "dtwc/lattice.hpp"
#include "dtwc/poisson.hpp"
#include "dtwc/quasipoly.hpp"
#include "dtwc/series.hpp"

namespace dtwc {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Rational small_rational(Rng& rng) {
  return fraction(uniform(rng, -5, 5), uniform(rng, 1, 3));
}

// Positive-grade exponent in n variables with entries in [0, 2].
Exponent positive_exponent(Rng& rng, std::size_t n) {
  Exponent e(n, 0);
  while (std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; }))
    for (auto& x : e) x = uniform(rng, 0, 2);
  return e;
}

LaurentPolynomial random_polynomial(Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi, int terms) {
  LaurentPolynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Exponent e(n);
    for (auto& x : e) x = uniform(rng, lo, hi);
    p.add_term(e, small_rational(rng));
  }
  return p;
}

// 1 + (terms of positive grade): the expansion is a power series in the grading.
LaurentPolynomial unit_denominator(Rng& rng, std::size_t n) {
  LaurentPolynomial h = LaurentPolynomial::constant(n, 1);
  int k = static_cast<int>(uniform(rng, 1, 3));
  for (int t = 0; t < k; ++t) h.add_term(positive_exponent(rng, n), small_rational(rng));
  return h;
}

QuasiPolynomial random_quasipoly(Rng& rng, std::size_t r, std::int64_t p, std::int64_t d) {
  QuasiPolynomial a(r, p);
  for (const auto& rho : residue_tuples(r, p)) {
    LaurentPolynomial poly(r);
    for (int t = 0; t < 3; ++t) {
      Exponent e(r);
      for (auto& x : e) x = uniform(rng, 0, d);
      poly.add_term(e, Rational(static_cast<long>(uniform(rng, -3, 3))));
    }
    a.set(rho, poly);
  }
  return a;
}

// Antisymmetric Euler form with one curve class and rank0 point classes.
LatticePtr random_lattice(Rng& rng, std::size_t rank0) {
  LatticeSpec s;
  s.rank1 = 1;
  s.rank0 = rank0;
  const std::size_t n = 2 + rank0;
  s.pairing.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s.pairing[i][j] = uniform(rng, -2, 2);
      s.pairing[j][i] = -s.pairing[i][j];
    }
  s.deg.assign(1 + rank0, 1);
  s.deg[0] = uniform(rng, 0, 2);
  s.l = {uniform(rng, 1, 2)};
  s.excdeg.assign(rank0, Rational(0));
  s.twistA = {IntVector(rank0, 0)};
  s.twistA[0][0] = s.l[0];
  s.duality.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) s.duality[i][i] = 1;
  s.effgens1 = {{1}};
  s.sigma = uniform(rng, 0, 1) ? 1 : -1;
  return Lattice::create(s);
}

KClass random_class(Rng& rng, const Lattice& lat, std::int64_t rank, std::int64_t beta_max) {
  KClass a{rank, {uniform(rng, 0, beta_max)}, IntVector(lat.rank0())};
  for (auto& x : a.c) x = uniform(rng, -2, 2);
  return a;
}

TorusElement random_element(Rng& rng, const LatticePtr& lat, std::int64_t rank, std::int64_t beta_lo,
                            std::int64_t beta_max, int terms) {
  TorusElement x(lat);
  for (int t = 0; t < terms; ++t) {
    KClass a = random_class(rng, *lat, rank, beta_max);
    a.beta[0] = std::max(a.beta[0], beta_lo);
    x.add_term(a, small_rational(rng));
  }
  return x;
}

class Suite {
 public:
  Suite(std::uint64_t seed, int trials) : rng_(seed), trials_(trials) { report_.seed = seed; }

  // body returns an empty string on success, otherwise a description.
  void property(const std::string& name, const std::function<std::string(Rng&)>& body) {
    PropertyResult res;
    res.name = name;
    for (int t = 0; t < trials_; ++t) {
      ++res.trials;
      std::string why;
      try {
        why = body(rng_);
      } catch (const Error& e) {
        why = std::string("unexpected error: ") + e.what();
      }
      if (!why.empty()) {
        if (res.failures++ == 0) res.first_failure = "trial " + std::to_string(t) + ": " + why;
      }
    }
    report_.properties.push_back(res);
  }

  SelfcheckReport finish() {
    report_.passed = true;
    for (const auto& p : report_.properties) report_.passed = report_.passed && p.failures == 0;
    return report_;
  }

 private:
  Rng rng_;
  int trials_;
  SelfcheckReport report_;
};

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

}  // namespace

SelfcheckReport run_selfcheck(std::uint64_t seed, int trials) {
  Suite suite(seed, trials);

  suite.property("rational round trip", [](Rng& rng) {
    Rational x = small_rational(rng) * Rational(static_cast<long>(uniform(rng, -1000, 1000)));
    return expect(parse_rational(to_string(x)) == x, "parse(to_string(x)) != x");
  });

  suite.property("polynomial ring axioms", [](Rng& rng) {
    auto a = random_polynomial(rng, 2, -2, 2, 4), b = random_polynomial(rng, 2, -2, 2, 4),
         c = random_polynomial(rng, 2, -2, 2, 4);
    if (a * b != b * a) return std::string("multiplication is not commutative");
    if (a * (b + c) != a * b + a * c) return std::string("multiplication does not distribute");
    LaurentPolynomial q;
    if (!b.is_zero() && (!divides(b, a * b, &q) || q != a)) return std::string("exact division failed");
    return std::string();
  });

  suite.property("expansion solves s*h = g on the final region", [](Rng& rng) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
    RationalFunction f(random_polynomial(rng, n, 0, 3, 3), unit_denominator(rng, n));
    if (f.numerator().is_zero()) return std::string();
    LinearFunctional L = LinearFunctional::from_integers(IntVector(n, 1));
    Window w{L, f.numerator().min_value(L) + Rational(static_cast<long>(uniform(rng, 0, 4)))};
    LaurentSeries s = expand(f, w);
    if (!verify_expansion(s, f)) return std::string("verify_expansion rejected expand output");
    LaurentSeries gs = mul(s, LaurentSeries::from_polynomial(f.denominator(), {w.functional, Rational(100)}));
    LaurentSeries g = LaurentSeries::from_polynomial(f.numerator(), w);
    return expect(agree(gs, g), "s*h differs from g inside the window");
  });

  suite.property("series division inverts multiplication", [](Rng& rng) {
    const std::size_t n = 2;
    LinearFunctional L = LinearFunctional::from_integers({1, 1});
    Rational bound(static_cast<long>(uniform(rng, 3, 6)));
    LaurentSeries a = LaurentSeries::from_polynomial(random_polynomial(rng, n, 0, 3, 4), {L, bound});
    LaurentSeries b = expand(RationalFunction::polynomial(unit_denominator(rng, n)), {L, bound});
    LaurentSeries q = divide(mul(a, b), b, L);
    return expect(agree(q, a), "(a*b)/b differs from a");
  });

  suite.property("orthant resummation matches partial sums", [](Rng& rng) {
    const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 2));
    const std::int64_t p = uniform(rng, 1, 2), d = uniform(rng, 0, 2), D = 6;
    QuasiPolynomial a = random_quasipoly(rng, r, p, d);
    std::vector<Exponent> monos;
    for (std::size_t i = 0; i < r; ++i) monos.push_back(positive_exponent(rng, 2));
    LinearFunctional grading = LinearFunctional::from_integers({1, 1});
    RationalFunction f = resum_orthant(a, monos, grading);
    LaurentPolynomial brute(2);
    IntVector nvec(r, 0);
    std::function<void(std::size_t, Exponent)> walk = [&](std::size_t i, Exponent e) {
      if (grading(e) > D) return;
      if (i == r) {
        brute.add_term(e, qp_eval(a, nvec));
        return;
      }
      for (nvec[i] = 0; grading(e + scaled(monos[i], nvec[i])) <= D; ++nvec[i]) walk(i + 1, e + scaled(monos[i], nvec[i]));
      nvec[i] = 0;
    };
    walk(0, zero_exponent(2));
    LaurentSeries s = expand(f, {grading, Rational(D)});
    return expect(s.polynomial() == brute, "expansion differs from the brute-force partial sum");
  });

  suite.property("quasi-polynomial detection recovers its input", [](Rng& rng) {
    const std::int64_t p = uniform(rng, 1, 3), d = uniform(rng, 0, 2);
    QuasiPolynomial a = random_quasipoly(rng, 1, p, d);
    std::map<std::int64_t, Rational> samples;
    for (std::int64_t m = -10; m <= 10; ++m) samples[m] = qp_eval(a, {m});
    DetectResult r = detect_quasipoly(samples, 3, 3);
    const auto* q = std::get_if<QuasiPolynomial>(&r);
    if (!q) return std::string("no fit found");
    for (std::int64_t m = -30; m <= 30; ++m)
      if (qp_eval(*q, {m}) != qp_eval(a, {m})) return "fit differs at " + std::to_string(m);
    return std::string();
  });

  suite.property("bracket antisymmetry and Jacobi", [](Rng& rng) {
    LatticePtr lat = random_lattice(rng, static_cast<std::size_t>(uniform(rng, 1, 2)));
    Truncation tr{{4}, {0, -1}, std::nullopt};
    auto x = random_element(rng, lat, 0, 0, 2, 2), y = random_element(rng, lat, 0, 0, 2, 2),
         z = random_element(rng, lat, -1, 0, 2, 2);
    if (bracket(x, y, tr) != -bracket(y, x, tr)) return std::string("bracket is not antisymmetric");
    TorusElement j = bracket(x, bracket(y, z, tr), tr) + bracket(y, bracket(z, x, tr), tr) + bracket(z, bracket(x, y, tr), tr);
    return expect(j.is_zero(), "Jacobi identity fails");
  });

  suite.property("exp_ad(w) inverts exp_ad(-w)", [](Rng& rng) {
    LatticePtr lat = random_lattice(rng, 2);
    Truncation tr{{3}, {0, -1}, std::nullopt};
    auto w = random_element(rng, lat, 0, 1, 2, 2), x = random_element(rng, lat, -1, 0, 1, 3);
    return expect(exp_ad(w, exp_ad(-w, x, tr), tr) == truncate(x, tr), "round trip changed x");
  });

  suite.property("duality is an involution on classes", [](Rng& rng) {
    LatticePtr lat = random_lattice(rng, 2);
    KClass a = random_class(rng, *lat, uniform(rng, -1, 0), 3);
    return expect(lat->dualize(lat->dualize(a)) == a, "D(D(a)) != a");
  });

  suite.property("Behrend weight is multiplicative", [](Rng& rng) {
    std::vector<std::int64_t> a, b;
    for (int i = 0; i < uniform(rng, 0, 3); ++i) a.push_back(uniform(rng, 0, 5));
    for (int i = 0; i < uniform(rng, 0, 3); ++i) b.push_back(uniform(rng, 0, 5));
    std::vector<std::int64_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return expect(behrend_smooth(ab) == behrend_smooth(a) * behrend_smooth(b), "weight of a concatenation");
  });

  return suite.finish();
}

}  // namespace dtwc
