#include "dtwc/json_io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <functional>

#include "dtwc/error.hpp"

namespace dtwc::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Input, "expected an array", path.empty() ? "/" : path);
  return j;
}

Json exponent_json(const Exponent& e) { return Json(e); }

}  // namespace

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::Input, "expected an object", path.empty() ? "/" : path);
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Input, std::string("missing field '") + key + "'", at(path, key));
  return *it;
}

std::int64_t read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Input, "expected an integer", path);
  return j.get<std::int64_t>();
}

Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw Error(ErrorKind::Input, "expected a rational string \"p/q\"", path);
  return parse_rational(j.get<std::string>(), path);
}

IntVector read_ints(const Json& j, const std::string& path, std::optional<std::size_t> length) {
  require_array(j, path);
  if (length && j.size() != *length)
    throw Error(ErrorKind::Dimension, "expected " + std::to_string(*length) + " entries, got " + std::to_string(j.size()),
                path);
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_int(j[i], at(path, i)));
  return v;
}

IntMatrix read_matrix(const Json& j, const std::string& path) {
  require_array(j, path);
  IntMatrix m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(read_ints(j[i], at(path, i)));
  return m;
}

LatticeSpec read_lattice(const Json& j, const std::string& path) {
  LatticeSpec s;
  auto rank = [&](const char* key) {
    std::int64_t v = read_int(field(j, key, path), at(path, key));
    if (v < 0) throw Error(ErrorKind::Input, "rank must be nonnegative", at(path, key));
    return static_cast<std::size_t>(v);
  };
  s.rank1 = rank("rank1");
  s.rank0 = rank("rank0");
  s.pairing = read_matrix(field(j, "pairing", path), at(path, "pairing"));
  s.deg = read_ints(field(j, "deg", path), at(path, "deg"));
  s.l = read_ints(field(j, "l", path), at(path, "l"));
  const auto& ex = require_array(field(j, "excdeg", path), at(path, "excdeg"));
  for (std::size_t i = 0; i < ex.size(); ++i) s.excdeg.push_back(read_rational(ex[i], at(at(path, "excdeg"), i)));
  s.twistA = read_matrix(field(j, "twistA", path), at(path, "twistA"));
  s.duality = read_matrix(field(j, "duality", path), at(path, "duality"));
  s.effgens1 = read_matrix(field(j, "effgens1", path), at(path, "effgens1"));
  s.sigma = static_cast<int>(read_int(field(j, "sigma", path), at(path, "sigma")));
  try {
    Lattice::create(s);
  } catch (const Error& e) {
    throw Error(e.kind(), e.what(), e.path().empty() ? path : path + "/" + e.path());
  }
  return s;
}

Json write_lattice(const LatticeSpec& s) {
  Json ex = Json::array();
  for (const auto& x : s.excdeg) ex.push_back(to_string(x));
  return Json{{"rank1", s.rank1},   {"rank0", s.rank0},   {"pairing", s.pairing},   {"deg", s.deg},
              {"l", s.l},           {"excdeg", ex},       {"twistA", s.twistA},     {"duality", s.duality},
              {"effgens1", s.effgens1}, {"sigma", s.sigma}};
}

std::string fingerprint(const LatticeSpec& s) {
  const std::string text = write_lattice(s).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

LaurentPolynomial read_polynomial(const Json& j, std::size_t nvars, const std::string& path) {
  require_array(j, path);
  LaurentPolynomial p(nvars);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at(path, i);
    Exponent e = read_ints(field(j[i], "exponent", here), at(here, "exponent"), nvars);
    p.add_term(e, read_rational(field(j[i], "coeff", here), at(here, "coeff")));
  }
  return p;
}

Json write_polynomial(const LaurentPolynomial& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"exponent", exponent_json(e)}, {"coeff", to_string(c)}});
  return out;
}

RationalFunction read_fraction(const Json& j, std::size_t nvars, const std::string& path) {
  LaurentPolynomial num = read_polynomial(field(j, "num", path), nvars, at(path, "num"));
  LaurentPolynomial den = read_polynomial(field(j, "den", path), nvars, at(path, "den"));
  if (den.is_zero()) throw Error(ErrorKind::Input, "zero denominator", at(path, "den"));
  return RationalFunction(num, den);
}

Json write_fraction(const RationalFunction& f) {
  return {{"num", write_polynomial(f.numerator())}, {"den", write_polynomial(f.denominator())}};
}

LinearFunctional read_functional(const Json& j, std::size_t nvars, const std::string& path) {
  require_array(j, path);
  if (j.size() != nvars) throw Error(ErrorKind::Dimension, "functional must have " + std::to_string(nvars) + " entries", path);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(read_rational(j[i], at(path, i)));
  return LinearFunctional(std::move(c));
}

Json write_functional(const LinearFunctional& L) {
  Json out = Json::array();
  for (const auto& c : L.coefficients()) out.push_back(to_string(c));
  return out;
}

Window read_window(const Json& j, std::size_t nvars, const std::string& path) {
  return {read_functional(field(j, "functional", path), nvars, at(path, "functional")),
          read_rational(field(j, "bound", path), at(path, "bound"))};
}

Json write_window(const Window& w) { return {{"functional", write_functional(w.functional)}, {"bound", to_string(w.bound)}}; }

LaurentSeries read_series(const Json& j, std::size_t nvars, const std::string& path) {
  Window w = read_window(field(j, "window", path), nvars, at(path, "window"));
  LaurentPolynomial p = read_polynomial(field(j, "terms", path), nvars, at(path, "terms"));
  LaurentSeries s(nvars, w);
  std::size_t i = 0;
  for (const auto& [e, c] : p.terms()) {
    if (!w.contains(e)) throw Error(ErrorKind::Input, "term outside the series window", at(at(path, "terms"), i));
    s.add_term(e, c);
    ++i;
  }
  return s;
}

Json write_series(const LaurentSeries& s) {
  return {{"terms", write_polynomial(s.polynomial())}, {"window", write_window(s.window())}};
}

QuasiPolynomial read_quasipoly(const Json& j, const std::string& path) {
  std::int64_t period = read_int(field(j, "period", path), at(path, "period"));
  std::int64_t vars = read_int(field(j, "vars", path), at(path, "vars"));
  if (period < 1) throw Error(ErrorKind::Input, "period must be at least 1", at(path, "period"));
  if (vars < 1) throw Error(ErrorKind::Input, "vars must be at least 1", at(path, "vars"));
  const std::size_t r = static_cast<std::size_t>(vars);
  QuasiPolynomial q(r, period);
  const auto& table = require_array(field(j, "table", path), at(path, "table"));
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string here = at(at(path, "table"), i);
    IntVector rho = read_ints(field(table[i], "residues", here), at(here, "residues"), r);
    for (auto x : rho)
      if (x < 0 || x >= period) throw Error(ErrorKind::Input, "residue outside [0, period)", at(here, "residues"));
    if (!seen.insert(rho).second) throw Error(ErrorKind::Input, "duplicate residue tuple", at(here, "residues"));
    LaurentPolynomial p(r);
    Exponent e(r, 0);
    std::function<void(const Json&, std::size_t, const std::string&)> walk = [&](const Json& a, std::size_t depth,
                                                                                 const std::string& ap) {
      if (depth == r) {
        p.add_term(e, read_rational(a, ap));
        return;
      }
      require_array(a, ap);
      for (std::size_t k = 0; k < a.size(); ++k) {
        e[depth] = static_cast<std::int64_t>(k);
        walk(a[k], depth + 1, at(ap, k));
      }
    };
    walk(field(table[i], "coeffs", here), 0, at(here, "coeffs"));
    q.set(rho, p);
  }
  return q;
}

Json write_quasipoly(const QuasiPolynomial& q) {
  const std::size_t r = q.vars();
  Json table = Json::array();
  for (const auto& [rho, p] : q.table()) {
    IntVector dims(r);
    for (std::size_t i = 0; i < r; ++i) dims[i] = std::max<std::int64_t>(p.degree_in(i), 0) + 1;
    Exponent e(r, 0);
    std::function<Json(std::size_t)> build = [&](std::size_t depth) -> Json {
      if (depth == r) return to_string(p.coeff(e));
      Json a = Json::array();
      for (std::int64_t k = 0; k < dims[depth]; ++k) {
        e[depth] = k;
        a.push_back(build(depth + 1));
      }
      return a;
    };
    table.push_back({{"residues", rho}, {"coeffs", build(0)}});
  }
  return {{"period", q.period()}, {"vars", r}, {"table", table}};
}

Json write_detect(const DetectResult& r) {
  if (const auto* q = std::get_if<QuasiPolynomial>(&r))
    return {{"fit", true}, {"quasipolynomial", write_quasipoly(*q)}, {"period", q->period()}, {"degree", qp_degree(*q, 0)}};
  return {{"fit", false}, {"failure", to_string(std::get<DetectFailure>(r))}};
}

Json write_reexpand(const ReexpandVerdict& v) {
  Json cosets = Json::array();
  for (const auto& c : v.cosets)
    cosets.push_back({{"representative", c.representative}, {"k_min", c.k_min}, {"k_max", c.k_max},
                      {"detection", write_detect(c.fit)}});
  Json out{{"premise_verified", v.premise_verified}, {"cosets", cosets},       {"all_fit", v.all_fit},
           {"plus_verified", v.plus_verified},       {"confirmed", v.confirmed}};
  if (v.plus_discrepancy)
    out["plus_discrepancy"] = {{"exponent", v.plus_discrepancy->first}, {"value", to_string(v.plus_discrepancy->second)}};
  return out;
}

KClass read_class(const Json& j, const Lattice& lat, const std::string& path) {
  KClass a;
  a.r = read_int(field(j, "r", path), at(path, "r"));
  a.beta = read_ints(field(j, "beta", path), at(path, "beta"), lat.rank1());
  a.c = read_ints(field(j, "c", path), at(path, "c"), lat.rank0());
  return a;
}

Json write_class(const KClass& a) { return {{"r", a.r}, {"beta", a.beta}, {"c", a.c}}; }

TorusElement read_element(const Json& j, const LatticePtr& lat, const std::string& path) {
  require_array(j, path);
  TorusElement x(lat);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at(path, i);
    x.add_term(read_class(j[i], *lat, here), read_rational(field(j[i], "coeff", here), at(here, "coeff")));
  }
  return x;
}

Json write_element(const TorusElement& x) {
  Json out = Json::array();
  for (const auto& [a, c] : x.terms()) {
    Json t = write_class(a);
    t["coeff"] = to_string(c);
    out.push_back(t);
  }
  return out;
}

Truncation read_truncation(const Json& j, const Lattice& lat, const std::string& path) {
  Truncation t;
  t.beta_cap = read_ints(field(j, "beta_cap", path), at(path, "beta_cap"), lat.rank1());
  if (!lat.is_effective(t.beta_cap)) throw Error(ErrorKind::NotEffective, "beta_cap is not effective", at(path, "beta_cap"));
  if (has(j, "rank_set")) {
    auto ranks = read_ints(j["rank_set"], at(path, "rank_set"));
    t.rank_set = {ranks.begin(), ranks.end()};
  }
  if (has(j, "deg_bound") && !j["deg_bound"].is_null()) t.deg_bound = read_rational(j["deg_bound"], at(path, "deg_bound"));
  return t;
}

Json write_truncation(const Truncation& t) {
  Json out{{"beta_cap", t.beta_cap}, {"rank_set", Json(std::vector<std::int64_t>(t.rank_set.begin(), t.rank_set.end()))}};
  out["deg_bound"] = t.deg_bound ? Json(to_string(*t.deg_bound)) : Json(nullptr);
  return out;
}

Slope read_slope(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Slope(Rational(static_cast<long>(j.get<std::int64_t>())));
  if (!j.is_string()) throw Error(ErrorKind::Input, "expected a slope string", path);
  return parse_slope(j.get<std::string>(), path);
}

GroupSpec read_group(const Json& j, const Lattice& lat, const std::string& path) {
  GroupSpec g;
  g.alpha_prime = read_class(field(j, "alpha_prime", path), lat, at(path, "alpha_prime"));
  const auto& betas = require_array(field(j, "betas", path), at(path, "betas"));
  for (std::size_t i = 0; i < betas.size(); ++i) g.betas.push_back(read_ints(betas[i], at(at(path, "betas"), i), lat.rank1()));
  const auto& kappas = require_array(field(j, "kappas", path), at(path, "kappas"));
  for (std::size_t i = 0; i < kappas.size(); ++i)
    g.kappas.push_back(read_ints(kappas[i], at(at(path, "kappas"), i), lat.rank0()));
  for (auto i : read_ints(field(j, "E", path), at(path, "E"))) {
    if (i < 1 || static_cast<std::size_t>(i) >= g.betas.size())
      throw Error(ErrorKind::Input, "equality position outside 1..r-1", at(path, "E"));
    g.E.insert(static_cast<std::size_t>(i));
  }
  const auto& jv = require_array(field(j, "J_values", path), at(path, "J_values"));
  for (std::size_t i = 0; i < jv.size(); ++i) g.J_values.push_back(read_rational(jv[i], at(at(path, "J_values"), i)));
  g.DT_value = read_rational(field(j, "DT_value", path), at(path, "DT_value"));
  if (has(j, "delta0")) g.delta0 = read_rational(j["delta0"], at(path, "delta0"));
  if (g.kappas.size() != g.betas.size() || g.J_values.size() != g.betas.size())
    throw Error(ErrorKind::Dimension, "betas, kappas and J_values must have equal length", path);
  return g;
}

Json write_duality(const DualityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x{{"beta", e.beta}, {"image", e.image}, {"passed", e.passed}};
    if (e.discrepancy) x["discrepancy"] = {{"exponent", e.discrepancy->first}, {"value", to_string(e.discrepancy->second)}};
    entries.push_back(x);
  }
  return {{"entries", entries}, {"passed", r.passed}};
}

Json write_gamma(const GammaVerdict& v) {
  if (!v.applicable) return {{"applicable", false}, {"reason", "no gamma-walls for this class"}};
  return {{"applicable", true},
          {"epsilon", to_string(v.epsilon)},
          {"beta_gamma", v.beta_gamma},
          {"c_gamma", v.c_gamma},
          {"c0", v.c0},
          {"L_known", write_functional(v.L_known)},
          {"L_candidate", write_functional(v.L_candidate)},
          {"reexpand", write_reexpand(v.reexpand)}};
}

}  // namespace dtwc::io
