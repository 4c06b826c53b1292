#include <doctest.h>

#include "dtwc/a1_model.hpp"
#include "dtwc/error.hpp"
#include "dtwc/wallcross.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dtwc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Input;
}

LaurentPolynomial poly(std::size_t n, std::initializer_list<std::pair<Exponent, Rational>> terms) {
  LaurentPolynomial p(n);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

TorusElement mono(const LatticePtr& lat, std::int64_t r, IntVector b, IntVector c, const Rational& k = 1) {
  return TorusElement::monomial(lat, lat->make_class(r, std::move(b), std::move(c)), k);
}

// One curve direction, one point direction.
LatticePtr line_lattice(std::int64_t chi_beta_o, std::int64_t chi_c_o, int sigma, std::int64_t l = 1) {
  LatticeSpec s = fixture::basic(1, 1);
  fixture::set_l(s, 0, l);
  s.pairing[1][0] = chi_beta_o;
  s.pairing[0][1] = -chi_beta_o;
  s.pairing[2][0] = chi_c_o;
  s.pairing[0][2] = -chi_c_o;
  s.sigma = sigma;
  return Lattice::create(s);
}

LatticePtr random_lattice(oracle::Rng& rng) {
  LatticeSpec s = fixture::basic(static_cast<std::size_t>(oracle::uniform(rng, 1, 2)),
                                 static_cast<std::size_t>(oracle::uniform(rng, 1, 2)));
  fixture::antisymmetrize(s, rng, 2);
  for (std::size_t i = 0; i < s.rank1; ++i) fixture::set_l(s, i, oracle::uniform(rng, 1, 2));
  s.sigma = oracle::uniform(rng, 0, 1) ? 1 : -1;
  return Lattice::create(s);
}

IntVector random_beta(oracle::Rng& rng, std::size_t n, std::int64_t hi) {
  IntVector b(n, 0);
  while (std::all_of(b.begin(), b.end(), [](std::int64_t v) { return v == 0; }))
    for (auto& v : b) v = oracle::uniform(rng, 0, hi);
  return b;
}

IntVector random_c(oracle::Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  IntVector c(n);
  for (auto& v : c) v = oracle::uniform(rng, lo, hi);
  return c;
}

// Rank -1 terms of x with curve class beta, as a polynomial in the N0 variables.
LaurentPolynomial component(const TorusElement& x, const IntVector& beta, std::size_t n) {
  LaurentPolynomial p(n);
  for (const auto& [a, c] : x.terms())
    if (a.beta == beta) p.add_term(a.c, c);
  return p;
}

Rational deg_of_exponent(const Exponent& e) {
  Rational s = 0;
  for (auto v : e) s += Rational(static_cast<long>(v));
  return s;
}

}  // namespace

TEST_CASE("cross_wall examples") {
  LatticePtr lat = line_lattice(0, 0, 1);
  Truncation tr{{2}, {0, -1}, std::nullopt};
  SeedSeries seed{mono(lat, -1, {0}, {0}), Rational(0)};
  WallDatum commuting{Rational(1), mono(lat, 0, {1}, {1}, 5)};
  CHECK(cross_wall(seed, commuting, tr).element == seed.element);
  CHECK(cross_wall(seed, {Rational(1), TorusElement(lat)}, tr).element == seed.element);
  CHECK(iterate_walls(seed, {}, tr).element == seed.element);

  for (int sigma : {1, -1})
    for (std::int64_t n : {1, 2}) {
      LatticePtr L = line_lattice(-n, 0, sigma);
      SeedSeries s{mono(L, -1, {0}, {0}), Rational(0)};
      const Rational J(2, 5);
      Truncation cap1{{1}, {0, -1}, std::nullopt};
      SeedSeries out = cross_wall(s, {Rational(1), mono(L, 0, {1}, {1}, J)}, cap1);
      Rational sign = (sigma == -1 && n % 2) ? -1 : 1;
      CHECK(out.element == s.element + mono(L, -1, {1}, {1}, sign * Rational(static_cast<long>(n)) * J));
      CHECK(out.past);
      CHECK(out.cutoff == Slope(Rational(1)));
    }

  CHECK(kind_of([&] { cross_wall(seed, {Rational(2), mono(lat, 0, {1}, {1})}, tr); }) == ErrorKind::Input);
  CHECK(kind_of([&] { cross_wall(seed, {Rational(-1), mono(lat, 0, {1}, {-1})}, tr); }) == ErrorKind::Input);
  CHECK(kind_of([&] {
          iterate_walls(seed, {{Rational(2), mono(lat, 0, {1}, {2})}, {Rational(1), mono(lat, 0, {1}, {1})}}, tr);
        }) == ErrorKind::Input);
  CHECK(kind_of([&] {
          iterate_walls(seed, {{Rational(1), mono(lat, 0, {1}, {1})}, {Rational(1), mono(lat, 0, {1}, {1})}}, tr);
        }) == ErrorKind::Input);
}

TEST_CASE("iterate_walls against the direct ad-series") {
  oracle::Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    LatticePtr lat = random_lattice(rng);
    const std::size_t n1 = lat->rank1(), n0 = lat->rank0();
    Truncation tr{IntVector(n1, 2), {0, -1}, Rational(6)};
    TorusElement seed(lat);
    seed.add_term(lat->make_class(-1, IntVector(n1, 0), random_c(rng, n0, 0, 1)), oracle::small_rational(rng));
    // two walls at slopes 1 and 2
    std::vector<WallDatum> walls;
    std::vector<std::map<KClass, Rational>> raw;
    for (std::int64_t slope : {1, 2}) {
      TorusElement J(lat);
      for (int k = 0; k < 2; ++k) {
        IntVector b = random_beta(rng, n1, 1);
        IntVector c(n0, 0);
        c[0] = slope * lat->l_of(b);
        J.add_term(lat->make_class(0, b, c), oracle::small_rational(rng));
      }
      walls.push_back({Rational(static_cast<long>(slope)), J});
      raw.push_back(J.terms());
    }
    SeedSeries out = iterate_walls({seed, Rational(0)}, walls, tr);
    auto step = oracle::exp_ad_direct(*lat, raw[0], seed.terms(), tr, 10);
    step = oracle::exp_ad_direct(*lat, raw[1], step, tr, 10);
    CHECK(out.element.terms() == step);

    // crossing back through -J restores the seed
    SeedSeries back = out;
    back.element = exp_ad(-walls[1].J, back.element, tr);
    back.element = exp_ad(-walls[0].J, back.element, tr);
    CHECK(back.element == seed);
  }
}

TEST_CASE("commuting walls may be composed in either order") {
  LatticePtr lat = line_lattice(-1, 0, -1);
  LatticeSpec s = lat->spec();
  Truncation tr{{3}, {0, -1}, std::nullopt};
  // both wall terms are multiples of the same curve direction with vanishing
  // mutual pairing, so the adjoint actions commute
  TorusElement J1 = mono(lat, 0, {1}, {1}, 3), J2 = mono(lat, 0, {1}, {2}, Rational(-1, 2));
  CHECK(bracket(J1, J2, tr).is_zero());
  TorusElement seed = mono(lat, -1, {0}, {0}) + mono(lat, -1, {1}, {0}, 2);
  SeedSeries out = iterate_walls({seed, Rational(0)}, {{Rational(1), J1}, {Rational(2), J2}}, tr);
  CHECK(out.element == exp_ad(J1, exp_ad(J2, seed, tr), tr));
  CHECK(out.element == exp_ad(J2, exp_ad(J1, seed, tr), tr));
  CHECK(out.element != seed);
}

TEST_CASE("group_resum examples") {
  SUBCASE("empty group") {
    LatticePtr lat = line_lattice(0, 0, 1);
    GroupSpec g;
    g.alpha_prime = lat->make_class(-1, {0}, {3});
    g.DT_value = Rational(5, 2);
    RationalFunction f = group_resum(*lat, g, {{0}, {0, -1}, std::nullopt});
    CHECK(f.same_function(RationalFunction::polynomial(poly(1, {{{3}, Rational(5, 2)}}))));
  }
  SUBCASE("geometric series") {
    LatticePtr lat = line_lattice(-1, 0, 1);
    GroupSpec g;
    g.alpha_prime = lat->make_class(-1, {0}, {0});
    g.betas = {{1}};
    g.J_values = {1};
    g.kappas = *canonical_representatives(*lat, g.betas, {{0}}, {}, 0);
    CHECK(g.kappas == std::vector<IntVector>{{0}});
    RationalFunction f = group_resum(*lat, g, {{1}, {0, -1}, std::nullopt});
    CHECK(f.same_function({poly(1, {{{0}, 1}}), poly(1, {{{0}, 1}, {{1}, -1}})}));
  }
  SUBCASE("pairing along the point direction doubles the pole") {
    for (int sigma : {1, -1}) {
      LatticePtr lat = line_lattice(-1, -1, sigma);
      GroupSpec g;
      g.alpha_prime = lat->make_class(-1, {0}, {0});
      g.betas = {{1}};
      g.J_values = {1};
      g.kappas = {{0}};
      RationalFunction f = group_resum(*lat, g, {{1}, {0, -1}, std::nullopt});
      // chi = 1 + a
      if (sigma == 1)
        CHECK(f.same_function({poly(1, {{{0}, 1}}), poly(1, {{{0}, 1}, {{1}, -2}, {{2}, 1}})}));
      else
        CHECK(f.same_function({poly(1, {{{0}, -1}}), poly(1, {{{0}, 1}, {{1}, 2}, {{2}, 1}})}));
      CHECK(divides(f.denominator(), poly(1, {{{0}, 1}, {{2}, -2}, {{4}, 1}})));
      CHECK_FALSE(divides(f.denominator(), poly(1, {{{0}, 1}, {{2}, -1}})));
    }
  }
  SUBCASE("A factor of an equality block") {
    CHECK(group_a_factor(0, {}) == 1);
    CHECK(group_a_factor(3, {}) == 1);
    CHECK(group_a_factor(3, {1, 2}) == Rational(1, 6));
    CHECK(group_a_factor(3, {2}) == Rational(1, 2));
  }
  SUBCASE("representatives must be canonical") {
    LatticePtr lat = line_lattice(-1, 0, 1);
    GroupSpec g;
    g.alpha_prime = lat->make_class(-1, {0}, {0});
    g.betas = {{1}};
    g.J_values = {1};
    g.kappas = {{1}};
    CHECK(kind_of([&] { group_resum(*lat, g, {{1}, {0, -1}, std::nullopt}); }) == ErrorKind::Minimality);
    g.kappas = {{-1}};
    CHECK(kind_of([&] { group_resum(*lat, g, {{1}, {0, -1}, std::nullopt}); }) == ErrorKind::Minimality);
    g.kappas = {{0}};
    g.betas = {{2}};
    CHECK(kind_of([&] { group_resum(*lat, g, {{1}, {0, -1}, std::nullopt}); }) == ErrorKind::Input);
  }
  SUBCASE("unrealizable equality pattern") {
    LatticePtr lat = line_lattice(-1, 0, 1, 2);
    // slopes 0 and 1/2 never coincide after integer shifts
    CHECK_FALSE(canonical_representatives(*lat, {{1}, {1}}, {{0}, {1}}, {1}, 0).has_value());
    CHECK(canonical_representatives(*lat, {{1}, {1}}, {{0}, {2}}, {1}, 0).has_value());
  }
}

TEST_CASE("group_resum against brute-force partial sums") {
  oracle::Rng rng(77);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 80; ++t) {
    LatticePtr lat = random_lattice(rng);
    const std::size_t n1 = lat->rank1(), n0 = lat->rank0();
    GroupSpec g;
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 0, 2));
    g.alpha_prime = lat->make_class(-1, random_c(rng, n1, 0, 1), random_c(rng, n0, -2, 2));
    std::vector<IntVector> cs;
    for (std::size_t i = 0; i < r; ++i) {
      g.betas.push_back(random_beta(rng, n1, 1));
      cs.push_back(random_c(rng, n0, -2, 2));
      g.J_values.push_back(oracle::small_rational(rng));
    }
    for (std::size_t i = 1; i < r; ++i)
      if (oracle::uniform(rng, 0, 1)) g.E.insert(i);
    g.delta0 = fraction(oracle::uniform(rng, -2, 4), 2);
    g.DT_value = oracle::small_rational(rng);
    auto canon = canonical_representatives(*lat, g.betas, cs, g.E, g.delta0);
    if (!canon) continue;
    g.kappas = *canon;
    IntVector cap = g.alpha_prime.beta;
    for (const auto& b : g.betas)
      for (std::size_t k = 0; k < n1; ++k) cap[k] += b[k];
    RationalFunction f = group_resum(*lat, g, {cap, {0, -1}, std::nullopt});
    Exponent base = g.alpha_prime.c;
    for (const auto& c : g.kappas) base = base + c;
    const std::int64_t amax = 15;
    const Rational bound = deg_of_exponent(base) + Rational(amax);
    LaurentSeries s = expand(f, {lat->deg0_functional(), bound});
    LaurentPolynomial brute = oracle::group_partial_sum(*lat, g, amax), trimmed(n0);
    for (const auto& [e, c] : brute.terms())
      if (deg_of_exponent(e) <= bound) trimmed.add_term(e, c);
    CHECK(s.polynomial() == trimmed);
    CHECK(divides(f.denominator(), group_denominator_bound(*lat, g)));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("resummed groups reproduce the wall-crossing iteration") {
  oracle::Rng rng(404);
  int nontrivial = 0;
  for (int t = 0; t < 60; ++t) {
    LatticePtr lat = random_lattice(rng);
    const std::size_t n1 = lat->rank1(), n0 = lat->rank0();
    IntVector cap(n1);
    for (auto& v : cap) v = oracle::uniform(rng, 1, 2);
    const Rational W = 6;
    const Rational delta0 = fraction(oracle::uniform(rng, 0, 2), 2);
    std::vector<JEntry> js;
    for (int k = 0; k < oracle::uniform(rng, 1, 3); ++k)
      js.push_back({random_beta(rng, n1, 1), random_c(rng, n0, -2, 2), oracle::small_rational(rng)});
    TorusElement seed(lat);
    for (int k = 0; k < oracle::uniform(rng, 1, 2); ++k)
      seed.add_term(lat->make_class(-1, random_c(rng, n1, 0, 1), random_c(rng, n0, 0, 1)), oracle::small_rational(rng));
    Truncation tr{cap, {0, -1}, W};
    seed = truncate(seed, tr);
    if (seed.is_zero()) continue;

    SeedSeries out = iterate_walls({seed, delta0}, walls_from_entries(lat, js, delta0, W), tr);
    auto groups = enumerate_groups(*lat, seed, js, delta0, cap);
    auto by_beta = resum_groups(*lat, groups, tr);
    std::set<IntVector> betas;
    for (const auto& [a, c] : out.element.terms()) betas.insert(a.beta);
    for (const auto& [b, f] : by_beta) betas.insert(b);
    for (const auto& b : betas) {
      LaurentPolynomial want = component(out.element, b, n0);
      auto it = by_beta.find(b);
      LaurentPolynomial got(n0);
      const LinearFunctional deg = lat->deg0_functional();
      if (it != by_beta.end() && !it->second.numerator().is_zero() &&
          it->second.numerator().min_value(deg) - it->second.denominator().min_value(deg) <= W)
        got = expand(it->second, {deg, W}).polynomial();
      CHECK(got == want);
    }
    if (out.element != seed) ++nontrivial;
  }
  CHECK(nontrivial >= 20);
}

TEST_CASE("DT/PT ratio") {
  LinearFunctional L = LinearFunctional::from_integers({1});
  RationalFunction f({poly(1, {{{-1}, 2}, {{2}, 1}})}, poly(1, {{{0}, 1}, {{1}, -3}}));
  LaurentSeries a = expand(f, {L, 8});
  CHECK(agree(dtpt_ratio(a, LaurentSeries::from_polynomial(LaurentPolynomial::constant(1, 1), {L, 8}), L), a));

  A1Model m = build_a1();
  LaurentSeries x = dtpt_ratio(expand(m.f_X, {m.L_plus, 16}), expand(m.dt0, {m.L_plus, 12}), m.L_plus);
  for (std::int64_t k = -4; k <= 12; ++k) {
    Rational want = k <= 3 ? Rational(0) : Rational(static_cast<long>((k % 2 ? -1 : 1) * (3 * k - 9)));
    CHECK(x.coeff({k, 4}) == want);
  }

  LaurentSeries b = expand(RationalFunction(LaurentPolynomial::constant(1, 1), poly(1, {{{0}, 1}, {{2}, 1}})), {L, 8});
  LaurentSeries one = dtpt_ratio(b, b, L);
  CHECK(one.polynomial() == LaurentPolynomial::constant(1, 1));
  CHECK(one.window().bound == 8);
  LaurentSeries ratio = dtpt_ratio(a, b, L);
  CHECK(agree(mul(ratio, b), a));
  LaurentSeries two = LaurentSeries::from_polynomial(poly(1, {{{0}, 2}, {{1}, 1}}), {L, 8});
  CHECK(kind_of([&] { dtpt_ratio(a, two, L); }) == ErrorKind::Input);
}

TEST_CASE("duality check") {
  SUBCASE("identity duality") {
    LatticeSpec s = fixture::basic(1, 2);
    LatticePtr lat = Lattice::create(s);
    RationalFunction f(poly(2, {{{1, 0}, 3}, {{0, 2}, -1}}), poly(2, {{{0, 0}, 1}, {{1, 1}, -1}}));
    DualityReport r = duality_check(*lat, {{{1}, f}, {{2}, f.scaled(2)}});
    CHECK(r.passed);
    CHECK(r.entries.size() == 2);
  }
  SUBCASE("point inversion with a palindromic layer") {
    A1Model m = build_a1();
    LaurentPolynomial onep = poly(2, {{{0, 0}, 1}, {{1, 0}, 1}});
    RationalFunction pal(poly(2, {{{1, 0}, 1}}), onep.pow(2));
    DualityReport r = duality_check(*m.lattice, {{{1}, pal}});
    CHECK(r.passed);
    RationalFunction bad(poly(2, {{{1, 0}, 1}, {{2, 0}, Rational(1, 3)}}), onep.pow(2));
    DualityReport rb = duality_check(*m.lattice, {{{1}, bad}});
    CHECK_FALSE(rb.passed);
    REQUIRE(rb.entries.size() == 1);
    CHECK(rb.entries[0].discrepancy.has_value());
    CHECK(rb.entries[0].beta == IntVector{1});
  }
  SUBCASE("swapped curve classes") {
    LatticeSpec s = fixture::basic(2, 1);
    s.duality = {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    LatticePtr lat = Lattice::create(s);
    RationalFunction f(poly(1, {{{1}, 1}}), poly(1, {{{0}, 1}, {{1}, -1}}));
    RationalFunction g(poly(1, {{{2}, 1}}), poly(1, {{{0}, 1}, {{1}, -1}}));
    CHECK(duality_check(*lat, {{{1, 0}, f}, {{0, 1}, f}}).passed);
    DualityReport r = duality_check(*lat, {{{1, 0}, f}, {{0, 1}, g}});
    CHECK_FALSE(r.passed);
    for (const auto& e : r.entries) CHECK(e.discrepancy.has_value());
    CHECK(kind_of([&] { duality_check(*lat, {{{1, 0}, f}}); }) == ErrorKind::IncompleteFamily);
  }
}

TEST_CASE("gamma-wall crossing") {
  SUBCASE("no walls on a variety") {
    LatticePtr lat = Lattice::create(fixture::basic(1, 1));
    RationalFunction f = RationalFunction::polynomial(LaurentPolynomial::constant(1, 1));
    LinearFunctional L = LinearFunctional::from_integers({1});
    GammaVerdict v = cross_gamma_wall(*lat, f, 1, {1}, expand(f, {L, 2}), expand(f, {L, 2}));
    CHECK_FALSE(v.applicable);
  }
  SUBCASE("synthetic one-wall model") {
    LatticeSpec s = fixture::basic(1, 2);
    s.excdeg = {Rational(-1), Rational(1)};
    s.twistA = {{1, 0}};
    LatticePtr lat = Lattice::create(s);
    CHECK(lat->gamma_walls({1}) == std::vector<Rational>{1});
    CHECK(gamma_epsilon(*lat, 1, {1}) == Rational(1, 2));
    CHECK(kind_of([&] { gamma_epsilon(*lat, 2, {1}); }) == ErrorKind::NotAWall);
    for (int orient : {1, -1}) {
      // 1/(1 - q^{+-c_gamma})
      RationalFunction f(LaurentPolynomial::constant(2, 1), poly(2, {{{0, 0}, 1}, {{orient, 0}, -1}}));
      LaurentSeries known = expand(f, {lat->L_gamma(Rational(3, 2)), 6});
      LaurentSeries cand = expand(f, {lat->L_gamma(Rational(1, 2)), 6});
      GammaVerdict v = cross_gamma_wall(*lat, f, 1, {1}, known, cand);
      CHECK(v.applicable);
      CHECK(v.c_gamma == IntVector{1, 0});
      CHECK(v.beta_gamma == IntVector{1});
      CHECK(v.reexpand.confirmed);
      REQUIRE(v.reexpand.cosets.size() == 1);
      const auto& q = std::get<QuasiPolynomial>(v.reexpand.cosets[0].fit);
      CHECK(q.period() == 1);
      // c0 is oriented against the known side, so a = 1 for 1/(1 - q^{c0})
      const Rational a = v.c0 == Exponent{orient, 0} ? 1 : -1;
      CHECK(q.at({0}) == LaurentPolynomial::constant(1, a));
      LaurentSeries wrong = cand;
      wrong.add_term({-3, 0}, 1);
      CHECK_FALSE(cross_gamma_wall(*lat, f, 1, {1}, known, wrong).reexpand.confirmed);
      CHECK(kind_of([&] { cross_gamma_wall(*lat, f, 3, {1}, known, cand); }) == ErrorKind::NotAWall);
    }
  }
  SUBCASE("transverse A1 model") {
    A1Model m = build_a1();
    const Lattice& lat = *m.lattice;
    const Rational eps = gamma_epsilon(lat, 1, {2});
    LaurentSeries known = expand(m.f_Y, {lat.L_gamma(1 + eps), 12});
    LaurentSeries cand(2, {lat.L_gamma(1 - eps), 20});
    for (std::int64_t k = -8; k <= 2; ++k) cand.add_term({k, 4}, Rational(behrend_smooth({2, 2 - k})));
    GammaVerdict v = cross_gamma_wall(lat, m.f_Y, 1, {2}, known, cand);
    CHECK(v.applicable);
    CHECK(v.reexpand.confirmed);
    for (const auto& c : v.reexpand.cosets) {
      const auto& q = std::get<QuasiPolynomial>(c.fit);
      CHECK(q.period() == 2);
      CHECK(qp_degree(q, 0) == 1);
      // candidate minus known is -(-1)^m (3m - 9) at q+^m q-^4
      for (std::int64_t k = -30; k <= 30; ++k) {
        const std::int64_t mm = c.representative[0] + k * v.c0[0];
        CHECK(c.representative[1] + k * v.c0[1] == 4);
        CHECK(qp_eval(q, {k}) == Rational(static_cast<long>((mm % 2 ? 1 : -1) * (3 * mm - 9))));
      }
    }
  }
}
