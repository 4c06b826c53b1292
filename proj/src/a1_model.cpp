#include "dtwc/a1_model.hpp"

#include <sstream>

#include "dtwc/error.hpp"
#include "dtwc/wallcross.hpp"

namespace dtwc {

namespace {

LaurentPolynomial qp_(std::int64_t m, std::int64_t n, const Rational& c = 1) { return LaurentPolynomial::monomial({m, n}, c); }

Rational closed_form(std::int64_t m) {
  Rational v(3 * m - 9);
  return m % 2 == 0 ? v : Rational(-v);
}

std::string exponent_text(const Exponent& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ")";
  return os.str();
}

// Names the first m in [lo, hi] where series(m, 4) differs from expected(m), and
// any stored term off the q-^4 row.
template <class Expected>
std::string column_mismatch(const LaurentSeries& s, std::int64_t lo, std::int64_t hi, Expected expected) {
  for (std::int64_t m = lo; m <= hi; ++m) {
    Rational got = s.coeff({m, 4}), want = expected(m);
    if (got != want) return "m = " + std::to_string(m) + ": got " + to_string(got) + ", expected " + to_string(want);
  }
  for (const auto& [e, c] : s.polynomial().terms())
    if (e[1] != 4) return "unexpected term at " + exponent_text(e);
  return {};
}

}  // namespace

Integer behrend_smooth(const std::vector<std::int64_t>& dims) {
  Integer v = 1;
  std::int64_t total = 0;
  for (auto d : dims) {
    if (d < 0) throw Error(ErrorKind::Input, "dimensions must be nonnegative");
    v *= static_cast<long>(d + 1);
    total += d;
  }
  return total % 2 == 0 ? v : Integer(-v);
}

A1Model build_a1() {
  LatticeSpec s;
  s.rank1 = 1;
  s.rank0 = 2;
  // chi(O, O_p+) = 1, chi(O, O_p-) = 0; the form vanishes on multi-regular classes.
  s.pairing = {{0, 0, 1, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}};
  s.deg = {0, 1, 1};
  s.l = {2};
  s.excdeg = {Rational(-1), Rational(1)};
  s.twistA = {{2, 0}};
  s.duality = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
  s.effgens1 = {{1}};
  s.sigma = -1;

  A1Model m;
  m.lattice = Lattice::create(s);
  m.C_h = {0, {1}, {0, 1}};
  m.C_v = {0, {0}, {0, 1}};
  m.point = {0, {0}, {1, 1}};
  LaurentPolynomial one = qp_(0, 0), onep = one + qp_(1, 0);
  LaurentPolynomial num = qp_(4, 4, 3);
  m.f_Y = RationalFunction(num, onep.pow(2));
  m.f_X = RationalFunction(num, onep.pow(4));
  m.dt0 = RationalFunction(one, onep.pow(2));
  m.L_plus = LinearFunctional::from_integers({1, 0});
  m.L_minus = LinearFunctional::from_integers({-1, 0});
  return m;
}

A1Report run_a1(std::int64_t W) {
  if (W < 8) throw Error(ErrorKind::Input, "report window must be at least 8");
  A1Model model = build_a1();
  const Lattice& lat = *model.lattice;
  A1Report rep;
  rep.window = W;
  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const Rational w(static_cast<long>(W));

  check("model identifications", model.C_h != model.C_v && model.C_v != model.point && model.C_h != model.point &&
                                     model.point - model.C_v == KClass{0, {0}, {1, 0}});
  auto walls = lat.gamma_walls({2});
  check("gamma walls", walls.size() == 1 && walls.front() == 1 && lat.distinguished_class(1, {2}).first == IntVector{1});

  // DT_0 layer at q+ = 0.
  LaurentSeries degree_zero = expand(model.dt0, {model.L_plus, w});
  std::string bad;
  for (std::int64_t m = 0; m <= W; ++m) {
    Rational c = degree_zero.coeff({m, 0});
    rep.dt0_coeffs.push_back(c);
    if (bad.empty() && c != Rational(behrend_smooth({m})))
      bad = "m = " + std::to_string(m) + ": got " + to_string(c);
  }
  if (bad.empty() && degree_zero.polynomial().size() != static_cast<std::size_t>(W + 1)) bad = "extra terms";
  check("DT_0 expansion", bad.empty(), bad);

  // Orbifold column: DT/DT_0 at q+ = 0, with a deg-graded cross-check.
  LaurentSeries dt_x = expand(model.f_X, {model.L_plus, w + 4});
  LaurentSeries x = dtpt_ratio(dt_x, degree_zero, model.L_plus);
  bad = x.window().bound == w + 4 ? column_mismatch(x, -W, W + 4, [](std::int64_t m) {
    return m <= 3 ? Rational(0) : closed_form(m);
  })
                                  : "window shrank to " + to_string(x.window().bound);
  check("orbifold column", bad.empty(), bad);
  LinearFunctional deg = lat.deg0_functional();
  LaurentSeries x_deg = dtpt_ratio(expand(model.f_X, {deg, w + 8}), expand(model.dt0, {deg, w}), deg);
  check("orbifold column, deg grading", LaurentSeries::from_polynomial(x.polynomial(), x_deg.window()).polynomial() ==
                                            x_deg.polynomial());

  // Resolution column at q+ = infinity, against the Behrend weights of P^2 x P^{2-m}.
  LaurentSeries y = expand(model.f_Y, {model.L_minus, w});
  bad = column_mismatch(y, -W, W + 4, [](std::int64_t m) { return m >= 3 ? Rational(0) : Rational(-closed_form(m)); });
  for (std::int64_t m = -W; m <= 2 && bad.empty(); ++m)
    if (y.coeff({m, 4}) != Rational(behrend_smooth({2, 2 - m}))) bad = "Behrend mismatch at m = " + std::to_string(m);
  check("resolution column", bad.empty(), bad);

  check("common numerator", verify_expansion(x, model.f_Y) && verify_expansion(y, model.f_Y));

  std::map<std::int64_t, Rational> diff;
  for (std::int64_t m = -W; m <= W + 4; ++m) {
    A1Row row{m, x.coeff({m, 4}), y.coeff({m, 4}), 0};
    row.diff = row.x - row.y;
    diff[m] = row.diff;
    rep.rows.push_back(row);
  }
  DetectResult fit = detect_quasipoly(diff, 4, 4);
  if (auto* q = std::get_if<QuasiPolynomial>(&fit)) {
    rep.fit = *q;
    bad.clear();
    if (q->period() != 2 || qp_degree(*q, 0) != 1) bad = "fitted period/degree differ from (2, 1)";
    for (std::int64_t m = -W - 16; m <= W + 20 && bad.empty(); ++m)
      if (m < -W || m > W + 4)
        if (qp_eval(*q, {m}) != closed_form(m)) bad = "held-out mismatch at m = " + std::to_string(m);
    check("difference is quasi-polynomial", bad.empty(), bad);
  } else {
    check("difference is quasi-polynomial", false, to_string(std::get<DetectFailure>(fit)));
  }

  rep.reexpand = reexpand_check(model.f_Y, y, x, {1, 0}, model.L_minus, model.L_plus, 4, 4);
  check("re-expansion", rep.reexpand.confirmed);

  // The same comparison across the gamma-wall: L_{gamma+eps} is known, the
  // Behrend table supplies the L_{gamma-eps} candidate.
  const Rational gamma = 1, eps = gamma_epsilon(lat, gamma, {2});
  LaurentSeries known = expand(model.f_Y, {lat.L_gamma(gamma + eps), (w + 24) / 3});
  LaurentSeries cand(2, {lat.L_gamma(gamma - eps), w + 12});
  for (std::int64_t m = -W; m <= 2; ++m) cand.add_term({m, 4}, Rational(behrend_smooth({2, 2 - m})));
  GammaVerdict gv = cross_gamma_wall(lat, model.f_Y, gamma, {2}, known, cand);
  bool fit_ok = gv.applicable && gv.reexpand.confirmed;
  for (const auto& c : gv.reexpand.cosets) {
    const auto* q = std::get_if<QuasiPolynomial>(&c.fit);
    if (!q || q->period() != 2 || qp_degree(*q, 0) != 1) fit_ok = false;
  }
  check("gamma-wall re-expansion", fit_ok);

  rep.passed = true;
  for (const auto& c : rep.checks) rep.passed = rep.passed && c.passed;
  return rep;
}

}  // namespace dtwc
