#include "dtwc/wallcross.hpp"

#include <algorithm>
#include <functional>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

IntVector vsum(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Rational nu_of(const Lattice& lat, const IntVector& beta, const IntVector& c) {
  return fraction(lat.deg_of(beta, c), lat.l_of(beta));
}

IntVector shifted_c(const IntVector& c, const IntVector& t, std::int64_t k) {
  IntVector r = c;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += k * t[i];
  return r;
}

KClass c_only(const Lattice& lat, const IntVector& c) { return {0, IntVector(lat.rank1(), 0), c}; }

}  // namespace

void validate_wall(const Lattice& lat, const WallDatum& wall) {
  for (const auto& [a, c] : wall.J.terms()) {
    if (a.r != 0) throw Error(ErrorKind::Input, "wall terms must have rank 0");
    if (!lat.is_effective(a.beta)) throw Error(ErrorKind::NotEffective, "wall term has a non-effective curve class");
    if (lat.nu_slope(a) != wall.slope) throw Error(ErrorKind::Input, "wall term has slope " + to_string(lat.nu_slope(a)) +
                                                                         ", wall is at " + to_string(wall.slope));
  }
}

SeedSeries cross_wall(const SeedSeries& state, const WallDatum& wall, const Truncation& trunc) {
  for (const auto& [a, c] : state.element.terms())
    if (a.r != -1) throw Error(ErrorKind::Input, "seed terms must have rank -1");
  if (wall.J.lattice()) validate_wall(*wall.J.lattice(), wall);
  if (state.past ? wall.slope <= state.cutoff : wall.slope < state.cutoff)
    throw Error(ErrorKind::Input, "wall at " + to_string(wall.slope) + " lies below the current cutoff");
  return {exp_ad(wall.J, state.element, trunc), wall.slope, true};
}

SeedSeries iterate_walls(const SeedSeries& seed, const std::vector<WallDatum>& walls, const Truncation& trunc) {
  for (std::size_t i = 1; i < walls.size(); ++i)
    if (!(walls[i - 1].slope < walls[i].slope)) throw Error(ErrorKind::Input, "walls must be strictly ascending");
  SeedSeries state = seed;
  for (const auto& w : walls) state = cross_wall(state, w, trunc);
  return state;
}

std::optional<std::vector<IntVector>> canonical_representatives(const Lattice& lat, const std::vector<IntVector>& betas,
                                                                const std::vector<IntVector>& cs,
                                                                const std::set<std::size_t>& E,
                                                                const Rational& delta0) {
  if (betas.size() != cs.size()) throw Error(ErrorKind::Dimension, "one representative per curve class");
  std::vector<IntVector> out;
  Rational prev;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (lat.l_of(betas[i]) < 1) throw Error(ErrorKind::Input, "group classes need l >= 1");
    const IntVector t = lat.twist(betas[i]);
    const Rational nu = nu_of(lat, betas[i], cs[i]);
    Integer k;
    if (i == 0) {
      k = ceil_of(delta0 - nu);
    } else if (E.count(i)) {
      Rational d = prev - nu;
      if (d.get_den() != 1) return std::nullopt;
      k = d.get_num();
    } else {
      k = floor_of(prev - nu);
    }
    out.push_back(shifted_c(cs[i], t, to_int64(k)));
    prev = nu + Rational(k);
  }
  return out;
}

Rational group_a_factor(std::size_t r, const std::set<std::size_t>& E) {
  Rational a = 1;
  std::size_t block = 0;
  for (std::size_t i = 1; i <= r; ++i) {
    ++block;
    if (i == r || !E.count(i)) {
      a /= Rational(factorial(static_cast<unsigned long>(block)));
      block = 0;
    }
  }
  return a;
}

QuasiPolynomial group_b_factor(const Lattice& lat, const GroupSpec& g) {
  const std::size_t r = g.betas.size();
  std::vector<KClass> x(r), t(r);
  for (std::size_t i = 0; i < r; ++i) {
    x[i] = {0, g.betas[i], g.kappas[i]};
    t[i] = c_only(lat, lat.twist(g.betas[i]));
  }
  // chi_i(a) = chi(x_i + a_i t_i, alpha' + sum_{j<i} (x_j + a_j t_j)), bilinear in a.
  std::vector<LaurentPolynomial> chis;
  KClass y = g.alpha_prime;
  for (std::size_t i = 0; i < r; ++i) {
    LaurentPolynomial chi = LaurentPolynomial::constant(r, static_cast<long>(lat.euler_pairing(x[i], y)));
    chi.add_term(unit_exponent(r, i), static_cast<long>(lat.euler_pairing(t[i], y)));
    for (std::size_t j = 0; j < i; ++j) {
      chi.add_term(unit_exponent(r, j), static_cast<long>(lat.euler_pairing(x[i], t[j])));
      chi.add_term(unit_exponent(r, i) + unit_exponent(r, j), static_cast<long>(lat.euler_pairing(t[i], t[j])));
    }
    chis.push_back(chi);
    y = y + x[i];
  }
  LaurentPolynomial prod = LaurentPolynomial::constant(r, 1), total(r);
  for (const auto& c : chis) {
    prod = prod * c;
    total += c;
  }
  const std::int64_t period = lat.sigma() == -1 ? 2 : 1;
  QuasiPolynomial b(r, period);
  for (const auto& rho : residue_tuples(r, period)) {
    bool odd = period == 2 && total.evaluate(rho).get_num() % 2 != 0;
    b.set(rho, odd ? -prod : prod);
  }
  return b;
}

RationalFunction group_resum(const Lattice& lat, const GroupSpec& g, const Truncation& trunc) {
  const std::size_t r = g.betas.size();
  lat.check(g.alpha_prime);
  if (g.alpha_prime.r != -1) throw Error(ErrorKind::Input, "seed class must have rank -1");
  if (g.kappas.size() != r || g.J_values.size() != r)
    throw Error(ErrorKind::Dimension, "group needs one representative and one J value per class");
  IntVector total = g.alpha_prime.beta;
  for (const auto& b : g.betas) {
    if (!lat.is_effective(b)) throw Error(ErrorKind::NotEffective, "group class is not effective");
    if (lat.l_of(b) < 1) throw Error(ErrorKind::Input, "group classes need l >= 1");
    total = vsum(total, b);
  }
  if (!lat.leq_effective(total, trunc.beta_cap)) throw Error(ErrorKind::Input, "group exceeds the curve class cap");
  auto canon = canonical_representatives(lat, g.betas, g.kappas, g.E, g.delta0);
  if (!canon) throw Error(ErrorKind::Minimality, "equality pattern cannot be realized by these cosets");
  if (*canon != g.kappas) throw Error(ErrorKind::Minimality, "coset representatives are not minimal for the slope chain");

  Rational k = group_a_factor(r, g.E) * g.DT_value;
  for (const auto& j : g.J_values) k *= j;
  Exponent base = g.alpha_prime.c;
  for (const auto& c : g.kappas) base = base + c;
  if (r == 0) return RationalFunction::polynomial(LaurentPolynomial::monomial(base, k));
  std::vector<Exponent> monos;
  for (const auto& b : g.betas) monos.push_back(lat.twist(b));
  RationalFunction f = resum_chain(group_b_factor(lat, g), ChainPattern{r, g.E}, monos, lat.deg0_functional());
  return f.scaled(k).times_monomial(base);
}

LaurentPolynomial group_denominator_bound(const Lattice& lat, const GroupSpec& g) {
  const std::size_t r = g.betas.size(), n = lat.rank0();
  LaurentPolynomial h = LaurentPolynomial::constant(n, 1);
  for (std::size_t i = 1; i <= r; ++i) {
    Exponent q(n, 0);
    for (std::size_t j = r - i; j < r; ++j) q = q + scaled(lat.twist(g.betas[j]), 2);
    LaurentPolynomial f = LaurentPolynomial::constant(n, 1) - LaurentPolynomial::monomial(q);
    h = h * f.pow(static_cast<unsigned>(2 * i));
  }
  return h;
}

std::vector<GroupSpec> enumerate_groups(const Lattice& lat, const TorusElement& seed, const std::vector<JEntry>& js,
                                        const Rational& delta0, const IntVector& beta_cap) {
  for (const auto& j : js)
    if (lat.l_of(j.beta) < 1) throw Error(ErrorKind::Input, "grouped J entries need l >= 1");
  std::vector<GroupSpec> out;
  for (const auto& [alpha, dt] : seed.terms()) {
    if (alpha.r != -1) throw Error(ErrorKind::Input, "seed terms must have rank -1");
    std::vector<std::size_t> seq;
    std::function<void(const IntVector&)> grow = [&](const IntVector& used) {
      const std::size_t r = seq.size();
      for (std::uint64_t mask = 0; mask < (r > 1 ? (1ull << (r - 1)) : 1ull); ++mask) {
        GroupSpec g;
        g.alpha_prime = alpha;
        g.DT_value = dt;
        g.delta0 = delta0;
        std::vector<IntVector> cs;
        for (auto idx : seq) {
          g.betas.push_back(js[idx].beta);
          g.J_values.push_back(js[idx].value);
          cs.push_back(js[idx].c);
        }
        for (std::size_t i = 1; i < r; ++i)
          if (mask & (1ull << (i - 1))) g.E.insert(i);
        auto canon = canonical_representatives(lat, g.betas, cs, g.E, delta0);
        if (!canon) continue;
        g.kappas = *canon;
        out.push_back(std::move(g));
      }
      for (std::size_t idx = 0; idx < js.size(); ++idx) {
        IntVector next = vsum(used, js[idx].beta);
        if (!lat.leq_effective(next, beta_cap)) continue;
        seq.push_back(idx);
        grow(next);
        seq.pop_back();
      }
    };
    grow(alpha.beta);
  }
  return out;
}

std::map<IntVector, RationalFunction> resum_groups(const Lattice& lat, const std::vector<GroupSpec>& groups,
                                                   const Truncation& trunc) {
  std::map<IntVector, RationalFunction> out;
  for (const auto& g : groups) {
    IntVector total = g.alpha_prime.beta;
    for (const auto& b : g.betas) total = vsum(total, b);
    RationalFunction f = group_resum(lat, g, trunc);
    auto it = out.find(total);
    if (it == out.end())
      out.emplace(total, f);
    else
      it->second = it->second + f;
  }
  return out;
}

std::vector<WallDatum> walls_from_entries(const LatticePtr& lat, const std::vector<JEntry>& js, const Rational& delta0,
                                          const Rational& deg_bound) {
  std::map<Slope, TorusElement> by_slope;
  for (const auto& j : js) {
    const std::int64_t l = lat->l_of(j.beta);
    if (l == 0) {
      KClass a{0, j.beta, j.c};
      if (Rational(static_cast<long>(lat->deg0(j.c))) <= deg_bound) {
        auto [it, ins] = by_slope.try_emplace(Slope::infinity(), TorusElement(lat));
        it->second.add_term(a, j.value);
      }
      continue;
    }
    const IntVector t = lat->twist(j.beta);
    const Rational nu = nu_of(*lat, j.beta, j.c);
    const std::int64_t k_lo = to_int64(ceil_of(delta0 - nu));
    const std::int64_t k_hi =
        to_int64(floor_of((deg_bound - Rational(static_cast<long>(lat->deg0(j.c)))) / Rational(static_cast<long>(l))));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      KClass a{0, j.beta, shifted_c(j.c, t, k)};
      auto [it, ins] = by_slope.try_emplace(lat->nu_slope(a), TorusElement(lat));
      it->second.add_term(a, j.value);
    }
  }
  std::vector<WallDatum> walls;
  for (auto& [s, J] : by_slope)
    if (!J.is_zero()) walls.push_back({s, J});
  return walls;
}

LaurentSeries dtpt_ratio(const LaurentSeries& dt_beta, const LaurentSeries& dt_zero, const LinearFunctional& L) {
  if (!dt_zero.is_zero()) {
    auto mins = dt_zero.polynomial().minimizers(L);
    if (mins.size() == 1 && dt_zero.coeff(mins.front()) != 1)
      throw Error(ErrorKind::Input, "the minimal term of the degree-zero series must have coefficient 1");
  }
  return divide(dt_beta, dt_zero, L);
}

DualityReport duality_check(const Lattice& lat, const std::map<IntVector, RationalFunction>& f_by_beta) {
  const std::size_t n = lat.rank0();
  std::vector<Exponent> images;
  for (std::size_t k = 0; k < n; ++k) images.push_back(lat.dualize(c_only(lat, unit_exponent(n, k))).c);
  DualityReport rep;
  rep.passed = true;
  for (const auto& [beta, f] : f_by_beta) {
    if (f.nvars() != n) throw Error(ErrorKind::Dimension, "family entry has wrong variable count");
    KClass img = lat.dualize({0, beta, IntVector(n, 0)});
    if (img.r != 0) throw Error(ErrorKind::Input, "duality does not map this curve class into N<=1");
    auto other = f_by_beta.find(img.beta);
    if (other == f_by_beta.end()) throw Error(ErrorKind::IncompleteFamily, "incomplete family: missing D(beta) component");
    RationalFunction mapped(f.numerator().substitute(images, n).shifted(img.c), f.denominator().substitute(images, n));
    DualityEntry e;
    e.beta = beta;
    e.image = img.beta;
    LaurentPolynomial d = mapped.cross_difference(other->second);
    e.passed = d.is_zero();
    if (!e.passed) {
      e.discrepancy = *d.terms().begin();
      rep.passed = false;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

Rational gamma_epsilon(const Lattice& lat, const Rational& gamma, const IntVector& b) {
  auto walls = lat.gamma_walls(b);
  if (std::find(walls.begin(), walls.end(), gamma) == walls.end()) throw Error(ErrorKind::NotAWall, "not a wall");
  Rational gap = gamma;
  for (const auto& v : walls)
    if (v != gamma) gap = std::min<Rational>(gap, v > gamma ? Rational(v - gamma) : Rational(gamma - v));
  if (gap <= 0) throw Error(ErrorKind::NonGeneric, "non-generic: walls coincide");
  return gap / 2;
}

GammaVerdict cross_gamma_wall(const Lattice& lat, const RationalFunction& f, const Rational& gamma, const IntVector& b,
                              const LaurentSeries& s_plus_side, const LaurentSeries& s_minus_side,
                              std::int64_t max_period, std::int64_t max_degree) {
  GammaVerdict v;
  if (lat.gamma_walls(b).empty()) return v;
  v.applicable = true;
  v.epsilon = gamma_epsilon(lat, gamma, b);
  std::tie(v.beta_gamma, v.c_gamma) = lat.distinguished_class(gamma, b);
  v.L_known = lat.L_gamma(gamma + v.epsilon);
  v.L_candidate = lat.L_gamma(gamma - v.epsilon);
  const Exponent cg = v.c_gamma;
  const Rational sk = v.L_known(cg), sc = v.L_candidate(cg);
  if (sk == 0 || sc == 0 || (sk > 0) == (sc > 0))
    throw Error(ErrorKind::NonGeneric, "non-generic: L_gamma does not change sign on c_gamma across the wall");
  v.c0 = primitive(cg);
  if (sk > 0) v.c0 = -v.c0;
  v.reexpand = reexpand_check(f, s_plus_side, s_minus_side, v.c0, v.L_known, v.L_candidate, max_period, max_degree);
  return v;
}

}  // namespace dtwc
