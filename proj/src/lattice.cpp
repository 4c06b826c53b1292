#include "dtwc/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "dtwc/error.hpp"

namespace dtwc {

namespace {

IntVector vadd(const IntVector& a, const IntVector& b, std::int64_t k = 1) {
  if (a.size() != b.size()) throw Error(ErrorKind::Dimension, "vector lengths differ");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + k * b[i];
  return r;
}

bool is_zero_vec(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Integer(static_cast<long>(a[i])) * static_cast<long>(b[i]);
  return to_int64(s);
}

bool proportional(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (Integer(static_cast<long>(a[i])) * static_cast<long>(b[j]) !=
          Integer(static_cast<long>(a[j])) * static_cast<long>(b[i]))
        return false;
  return true;
}

void check_square(const IntMatrix& m, std::size_t n, const char* name) {
  if (m.size() != n) throw Error(ErrorKind::Dimension, std::string(name) + " must have " + std::to_string(n) + " rows", name);
  for (std::size_t i = 0; i < n; ++i)
    if (m[i].size() != n)
      throw Error(ErrorKind::Dimension, std::string(name) + " row has wrong length",
                  std::string(name) + "/" + std::to_string(i));
}

}  // namespace

KClass operator+(const KClass& a, const KClass& b) { return {a.r + b.r, vadd(a.beta, b.beta), vadd(a.c, b.c)}; }
KClass operator-(const KClass& a, const KClass& b) { return {a.r - b.r, vadd(a.beta, b.beta, -1), vadd(a.c, b.c, -1)}; }
KClass scaled(const KClass& a, std::int64_t k) {
  KClass r = a;
  r.r *= k;
  for (auto& x : r.beta) x *= k;
  for (auto& x : r.c) x *= k;
  return r;
}

IntVector primitive(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g <= 1) return v;
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

LatticePtr Lattice::create(LatticeSpec spec) {
  auto p = std::shared_ptr<Lattice>(new Lattice(std::move(spec)));
  p->validate();
  return p;
}

void Lattice::validate() const {
  const auto& s = spec_;
  const std::size_t n = dim();
  check_square(s.pairing, n, "pairing");
  check_square(s.duality, n, "duality");
  if (s.deg.size() != s.rank1 + s.rank0) throw Error(ErrorKind::Dimension, "deg must have rank1+rank0 entries", "deg");
  if (s.l.size() != s.rank1) throw Error(ErrorKind::Dimension, "l must have rank1 entries", "l");
  if (s.excdeg.size() != s.rank0) throw Error(ErrorKind::Dimension, "excdeg must have rank0 entries", "excdeg");
  if (s.twistA.size() != s.rank1) throw Error(ErrorKind::Dimension, "twistA must have rank1 rows", "twistA");
  for (std::size_t i = 0; i < s.rank1; ++i)
    if (s.twistA[i].size() != s.rank0)
      throw Error(ErrorKind::Dimension, "twistA row must have rank0 entries", "twistA/" + std::to_string(i));
  if (s.sigma != 1 && s.sigma != -1) throw Error(ErrorKind::Input, "sigma must be +1 or -1", "sigma");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += Integer(static_cast<long>(s.duality[i][k])) * static_cast<long>(s.duality[k][j]);
      if (acc != (i == j ? 1 : 0)) throw Error(ErrorKind::Input, "duality is not an involution", "duality");
    }
  const std::size_t c0 = 1 + s.rank1;
  for (std::size_t j = c0; j < n; ++j)
    for (std::size_t i = 0; i < c0; ++i)
      if (s.duality[i][j] != 0)
        throw Error(ErrorKind::Input, "duality does not preserve N0",
                    "duality/" + std::to_string(i) + "/" + std::to_string(j));
  for (std::size_t j = 0; j < s.rank0; ++j)
    if (s.deg[s.rank1 + j] <= 0)
      throw Error(ErrorKind::Input, "deg must be positive on the N0 basis", "deg/" + std::to_string(s.rank1 + j));
  for (std::size_t i = 0; i < s.rank1; ++i)
    if (deg0(s.twistA[i]) != s.l[i])
      throw Error(ErrorKind::Input, "deg(twistA(e_i)) must equal l(e_i)", "twistA/" + std::to_string(i));
  for (std::size_t g = 0; g < s.effgens1.size(); ++g) {
    if (s.effgens1[g].size() != s.rank1)
      throw Error(ErrorKind::Dimension, "effective generator has wrong length", "effgens1/" + std::to_string(g));
    if (l_of(s.effgens1[g]) < 1)
      throw Error(ErrorKind::Input, "effective generator must have l >= 1", "effgens1/" + std::to_string(g));
  }
}

void Lattice::check(const KClass& x) const {
  if (x.beta.size() != spec_.rank1 || x.c.size() != spec_.rank0)
    throw Error(ErrorKind::Dimension, "class does not match the lattice ranks");
}

KClass Lattice::zero_class() const { return {0, IntVector(spec_.rank1, 0), IntVector(spec_.rank0, 0)}; }

KClass Lattice::make_class(std::int64_t r, IntVector beta, IntVector c) const {
  KClass x{r, std::move(beta), std::move(c)};
  check(x);
  return x;
}

std::int64_t Lattice::euler_pairing(const KClass& a, const KClass& b) const {
  check(a);
  check(b);
  IntVector va{a.r}, vb{b.r};
  va.insert(va.end(), a.beta.begin(), a.beta.end());
  va.insert(va.end(), a.c.begin(), a.c.end());
  vb.insert(vb.end(), b.beta.begin(), b.beta.end());
  vb.insert(vb.end(), b.c.begin(), b.c.end());
  Integer s = 0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (va[i] == 0) continue;
    for (std::size_t j = 0; j < vb.size(); ++j)
      if (vb[j] != 0 && spec_.pairing[i][j] != 0)
        s += Integer(static_cast<long>(va[i])) * static_cast<long>(spec_.pairing[i][j]) * static_cast<long>(vb[j]);
  }
  return to_int64(s);
}

std::int64_t Lattice::l_of(const IntVector& beta) const {
  if (beta.size() != spec_.rank1) throw Error(ErrorKind::Dimension, "curve class has wrong length");
  return dot(spec_.l, beta);
}

std::int64_t Lattice::deg0(const IntVector& c) const {
  if (c.size() != spec_.rank0) throw Error(ErrorKind::Dimension, "N0 vector has wrong length");
  IntVector d(spec_.deg.begin() + static_cast<std::ptrdiff_t>(spec_.rank1), spec_.deg.end());
  return dot(d, c);
}

std::int64_t Lattice::deg_of(const IntVector& beta, const IntVector& c) const {
  IntVector d1(spec_.deg.begin(), spec_.deg.begin() + static_cast<std::ptrdiff_t>(spec_.rank1));
  if (beta.size() != spec_.rank1) throw Error(ErrorKind::Dimension, "curve class has wrong length");
  return dot(d1, beta) + deg0(c);
}

Rational Lattice::excdeg_of(const IntVector& c) const {
  if (c.size() != spec_.rank0) throw Error(ErrorKind::Dimension, "N0 vector has wrong length");
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += spec_.excdeg[i] * static_cast<long>(c[i]);
  return s;
}

IntVector Lattice::twist(const IntVector& beta) const {
  if (beta.size() != spec_.rank1) throw Error(ErrorKind::Dimension, "curve class has wrong length");
  IntVector t(spec_.rank0, 0);
  for (std::size_t i = 0; i < spec_.rank1; ++i)
    if (beta[i] != 0) t = vadd(t, spec_.twistA[i], beta[i]);
  return t;
}

LinearFunctional Lattice::deg0_functional() const {
  return LinearFunctional::from_integers(
      IntVector(spec_.deg.begin() + static_cast<std::ptrdiff_t>(spec_.rank1), spec_.deg.end()));
}

bool Lattice::is_effective(const IntVector& b) const {
  if (b.size() != spec_.rank1) throw Error(ErrorKind::Dimension, "curve class has wrong length");
  const auto& gens = spec_.effgens1;
  std::set<std::pair<IntVector, std::size_t>> failed;
  std::function<bool(const IntVector&, std::size_t)> search = [&](const IntVector& rem, std::size_t from) {
    if (is_zero_vec(rem)) return true;
    if (l_of(rem) <= 0) return false;
    if (failed.count({rem, from})) return false;
    for (std::size_t g = from; g < gens.size(); ++g)
      if (search(vadd(rem, gens[g], -1), g)) return true;
    failed.insert({rem, from});
    return false;
  };
  return search(b, 0);
}

bool Lattice::leq_effective(const IntVector& b1, const IntVector& b2) const {
  return is_effective(vadd(b2, b1, -1));
}

std::vector<IntVector> Lattice::enumerate_below(const IntVector& b) const {
  if (!is_effective(b)) throw Error(ErrorKind::NotEffective, "class is not effective");
  const std::int64_t budget = l_of(b);
  const auto& gens = spec_.effgens1;
  std::set<IntVector> found;
  std::function<void(const IntVector&, std::int64_t, std::size_t)> walk = [&](const IntVector& cur, std::int64_t left,
                                                                              std::size_t from) {
    found.insert(cur);
    for (std::size_t g = from; g < gens.size(); ++g) {
      std::int64_t lg = l_of(gens[g]);
      if (lg <= left) walk(vadd(cur, gens[g]), left - lg, g);
    }
  };
  walk(IntVector(spec_.rank1, 0), budget, 0);
  std::vector<IntVector> out;
  for (const auto& x : found)
    if (leq_effective(x, b)) out.push_back(x);
  return out;
}

Slope Lattice::nu_slope(const KClass& x) const {
  check(x);
  if (x.r != 0) throw Error(ErrorKind::Input, "slope needs a rank-zero class");
  if (is_zero_vec(x.beta) && is_zero_vec(x.c)) throw Error(ErrorKind::Input, "slope of the zero class");
  std::int64_t l = l_of(x.beta);
  if (l == 0) return Slope::infinity();
  return Slope(fraction(deg_of(x.beta, x.c), l));
}

std::vector<Rational> Lattice::nu_walls(const IntVector& b, const Rational& lo, const Rational& hi) const {
  if (!is_effective(b)) throw Error(ErrorKind::NotEffective, "class is not effective");
  std::int64_t l = l_of(b);
  if (l < 1) throw Error(ErrorKind::Input, "walls need l(b) >= 1");
  if (hi < lo) throw Error(ErrorKind::Input, "wall range is empty");
  Integer n = factorial(static_cast<unsigned long>(l));
  std::vector<Rational> out;
  for (Integer k = ceil_of(lo * n); k <= floor_of(hi * n); ++k) {
    Rational w(k, n);
    w.canonicalize();
    out.push_back(w);
  }
  return out;
}

std::pair<Slope, Slope> Lattice::zeta_slope(const KClass& x) const {
  check(x);
  if (is_zero_vec(x.beta)) {
    if (is_zero_vec(x.c)) throw Error(ErrorKind::Input, "slope of the zero class");
    return {Slope::infinity(), Slope::infinity()};
  }
  IntVector t = twist(x.beta);
  std::int64_t d = deg0(t);
  if (d == 0) throw Error(ErrorKind::Input, "deg(twistA(beta)) vanishes");
  Rational z1 = -excdeg_of(t) / Rational(static_cast<long>(d));
  KClass y = x;
  y.r = 0;
  return {Slope(z1), nu_slope(y)};
}

std::vector<Rational> Lattice::gamma_walls(const IntVector& b) const {
  std::set<Rational> walls;
  for (const auto& bp : enumerate_below(b)) {
    if (is_zero_vec(bp)) continue;
    auto z = zeta_slope({0, bp, IntVector(spec_.rank0, 0)}).first;
    if (!z.is_infinite() && z.value() > 0) walls.insert(z.value());
  }
  return {walls.begin(), walls.end()};
}

std::pair<IntVector, IntVector> Lattice::distinguished_class(const Rational& gamma, const IntVector& b) const {
  std::vector<IntVector> matches;
  for (const auto& bp : enumerate_below(b)) {
    if (is_zero_vec(bp)) continue;
    auto z = zeta_slope({0, bp, IntVector(spec_.rank0, 0)}).first;
    if (!z.is_infinite() && z.value() == gamma) matches.push_back(bp);
  }
  if (matches.empty() || gamma <= 0) throw Error(ErrorKind::NotAWall, "not a wall");
  for (const auto& m : matches)
    if (!proportional(m, matches.front()))
      throw Error(ErrorKind::NonGeneric, "non-generic functionals: non-proportional classes share the wall");
  auto best = *std::min_element(matches.begin(), matches.end(), [&](const IntVector& x, const IntVector& y) {
    return std::make_pair(l_of(x), x) < std::make_pair(l_of(y), y);
  });
  return {best, twist(best)};
}

KClass Lattice::dualize(const KClass& x) const {
  check(x);
  IntVector v{x.r};
  v.insert(v.end(), x.beta.begin(), x.beta.end());
  v.insert(v.end(), x.c.begin(), x.c.end());
  IntVector w(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = dot(spec_.duality[i], v);
  KClass y;
  y.r = w[0];
  y.beta.assign(w.begin() + 1, w.begin() + 1 + static_cast<std::ptrdiff_t>(spec_.rank1));
  y.c.assign(w.begin() + 1 + static_cast<std::ptrdiff_t>(spec_.rank1), w.end());
  return y;
}

LinearFunctional Lattice::L_gamma(const Rational& gamma) const {
  if (gamma <= 0) throw Error(ErrorKind::Input, "gamma must be positive");
  std::vector<Rational> coeffs(spec_.rank0);
  for (std::size_t i = 0; i < spec_.rank0; ++i)
    coeffs[i] = Rational(static_cast<long>(spec_.deg[spec_.rank1 + i])) + spec_.excdeg[i] / gamma;
  return LinearFunctional(std::move(coeffs));
}

}  // namespace dtwc
