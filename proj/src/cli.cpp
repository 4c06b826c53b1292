#include "dtwc/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "dtwc/a1_model.hpp"
#include "dtwc/error.hpp"
#include "dtwc/selfcheck.hpp"

namespace dtwc::cli {

namespace {

using io::field;
using io::has;
using io::Json;

// Attaches path to library errors raised without one.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.kind(), e.what(), path);
  }
}

struct Result {
  Json result;
  bool ok = true;
  std::string table;
};

struct Context {
  const Json& doc;
  const Options& opt;
  std::optional<LatticeSpec> spec;
  LatticePtr lattice;
};

void load_lattice(Context& ctx) {
  const Json& j = field(ctx.doc, "lattice", "");
  if (j.is_string()) {
    const std::string file = ctx.opt.base_dir + "/" + j.get<std::string>();
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::Input, "cannot open lattice file " + file, "/lattice");
    Json lj = Json::parse(in, nullptr, false);
    if (lj.is_discarded()) throw Error(ErrorKind::Input, "lattice file is not valid JSON", "/lattice");
    ctx.spec = io::read_lattice(lj, "/lattice");
  } else {
    ctx.spec = io::read_lattice(j, "/lattice");
  }
  ctx.lattice = Lattice::create(*ctx.spec);
}

std::size_t read_vars(const Json& doc) {
  std::int64_t n = io::read_int(field(doc, "vars", ""), "/vars");
  if (n < 1) throw Error(ErrorKind::Input, "vars must be at least 1", "/vars");
  return static_cast<std::size_t>(n);
}

std::string series_table(const LaurentSeries& s) {
  std::ostringstream out;
  out << "window: L <= " << to_string(s.window().bound) << "\n";
  for (const auto& [e, c] : s.polynomial().terms()) {
    out << "  q^(";
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
    out << ")  " << to_string(c) << "\n";
  }
  return out.str();
}

std::string detect_table(const DetectResult& r) {
  std::ostringstream out;
  if (const auto* q = std::get_if<QuasiPolynomial>(&r)) {
    out << "fit: period " << q->period() << ", degree " << qp_degree(*q, 0) << "\n";
    for (const auto& [rho, p] : q->table()) {
      out << "  residue (";
      for (std::size_t i = 0; i < rho.size(); ++i) out << (i ? "," : "") << rho[i];
      out << "):";
      for (const auto& [e, c] : p.terms()) out << " " << to_string(c) << "*n^" << e[0];
      out << "\n";
    }
  } else {
    out << "no fit: " << to_string(std::get<DetectFailure>(r)) << "\n";
  }
  return out.str();
}

std::int64_t read_small_int(const Json& doc, const char* key, std::int64_t fallback, std::int64_t lo) {
  if (!has(doc, key)) return fallback;
  std::int64_t v = io::read_int(doc[key], std::string("/") + key);
  if (v < lo) throw Error(ErrorKind::Input, std::string(key) + " must be at least " + std::to_string(lo), std::string("/") + key);
  return v;
}

Result do_expand(Context& ctx) {
  const std::size_t n = read_vars(ctx.doc);
  RationalFunction f = io::read_fraction(field(ctx.doc, "f", ""), n, "/f");
  Window w = io::read_window(field(ctx.doc, "window", ""), n, "/window");
  if (ctx.opt.window) w.bound = *ctx.opt.window;
  LaurentSeries s = located("/f", [&] { return expand(f, w); });
  return {{{"series", io::write_series(s)}}, true, series_table(s)};
}

Result do_verify(Context& ctx) {
  const std::size_t n = read_vars(ctx.doc);
  RationalFunction f = io::read_fraction(field(ctx.doc, "f", ""), n, "/f");
  LaurentSeries s = io::read_series(field(ctx.doc, "series", ""), n, "/series");
  auto d = located("/series", [&] { return expansion_discrepancy(s, f); });
  Json r{{"verified", !d.has_value()}};
  std::string table = d ? "not an expansion: first discrepancy at " + Json(d->first).dump() + "\n" : "verified\n";
  if (d) r["discrepancy"] = {{"exponent", d->first}, {"value", to_string(d->second)}};
  return {r, !d.has_value(), table};
}

Result do_resum(Context& ctx) {
  QuasiPolynomial a = io::read_quasipoly(field(ctx.doc, "quasipoly", ""), "/quasipoly");
  const Json& mj = field(ctx.doc, "monos", "");
  if (!mj.is_array() || mj.size() != a.vars())
    throw Error(ErrorKind::Dimension, "need one monomial per quasi-polynomial variable", "/monos");
  std::vector<Exponent> monos;
  for (std::size_t i = 0; i < mj.size(); ++i) monos.push_back(io::read_ints(mj[i], "/monos/" + std::to_string(i)));
  const std::size_t n = monos.front().size();
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (monos[i].size() != n) throw Error(ErrorKind::Dimension, "monomials disagree in length", "/monos/" + std::to_string(i));
  LinearFunctional grading = io::read_functional(field(ctx.doc, "grading", ""), n, "/grading");
  RationalFunction f;
  LaurentPolynomial bound;
  if (has(ctx.doc, "pattern")) {
    ChainPattern pat{a.vars(), {}};
    for (auto i : io::read_ints(field(ctx.doc["pattern"], "E", "/pattern"), "/pattern/E")) {
      if (i < 1 || static_cast<std::size_t>(i) >= a.vars())
        throw Error(ErrorKind::Input, "equality position outside 1..r-1", "/pattern/E");
      pat.E.insert(static_cast<std::size_t>(i));
    }
    f = located("/quasipoly", [&] { return resum_chain(a, pat, monos, grading); });
    bound = chain_lemma_denominator(a, pat, monos);
  } else {
    f = located("/quasipoly", [&] { return resum_orthant(a, monos, grading); });
    bound = orthant_lemma_denominator(a, monos);
  }
  const bool divides_bound = divides(f.denominator(), bound);
  Json r{{"fraction", io::write_fraction(f)},
         {"lemma_denominator", io::write_polynomial(bound)},
         {"denominator_divides_lemma_bound", divides_bound}};
  return {r, divides_bound, r.dump(2) + "\n"};
}

Result do_detect(Context& ctx) {
  const Json& sj = field(ctx.doc, "samples", "");
  if (!sj.is_array()) throw Error(ErrorKind::Input, "expected an array", "/samples");
  std::map<std::int64_t, Rational> samples;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string p = "/samples/" + std::to_string(i);
    std::int64_t m = io::read_int(field(sj[i], "n", p), p + "/n");
    if (!samples.emplace(m, io::read_rational(field(sj[i], "value", p), p + "/value")).second)
      throw Error(ErrorKind::Input, "duplicate sample point", p + "/n");
  }
  DetectResult r = detect_quasipoly(samples, read_small_int(ctx.doc, "max_period", 4, 1),
                                    read_small_int(ctx.doc, "max_degree", 4, 0));
  return {io::write_detect(r), std::holds_alternative<QuasiPolynomial>(r), detect_table(r)};
}

Truncation read_trunc(const Context& ctx) {
  return io::read_truncation(field(ctx.doc, "truncation", ""), *ctx.lattice, "/truncation");
}

Result do_bracket(Context& ctx) {
  load_lattice(ctx);
  TorusElement x = io::read_element(field(ctx.doc, "x", ""), ctx.lattice, "/x");
  TorusElement y = io::read_element(field(ctx.doc, "y", ""), ctx.lattice, "/y");
  Truncation t = read_trunc(ctx);
  std::string op = "bracket";
  if (has(ctx.doc, "op")) {
    if (!ctx.doc["op"].is_string()) throw Error(ErrorKind::Input, "op must be a string", "/op");
    op = ctx.doc["op"].get<std::string>();
  }
  TorusElement z;
  if (op == "bracket")
    z = bracket(x, y, t);
  else if (op == "star")
    z = star(x, y, t);
  else if (op == "naive")
    z = naive_product(x, y, t);
  else
    throw Error(ErrorKind::Input, "op must be bracket, star or naive", "/op");
  Json r{{"op", op}, {"element", io::write_element(z)}};
  return {r, true, r.dump(2) + "\n"};
}

Result do_exp_ad(Context& ctx) {
  load_lattice(ctx);
  TorusElement w = io::read_element(field(ctx.doc, "w", ""), ctx.lattice, "/w");
  TorusElement x = io::read_element(field(ctx.doc, "x", ""), ctx.lattice, "/x");
  Truncation t = read_trunc(ctx);
  TorusElement z = located("/w", [&] { return exp_ad(w, x, t); });
  Json r{{"element", io::write_element(z)}};
  return {r, true, r.dump(2) + "\n"};
}

Result do_wallcross(Context& ctx) {
  load_lattice(ctx);
  Truncation t = read_trunc(ctx);
  const Json& sj = field(ctx.doc, "seed", "");
  SeedSeries seed{io::read_element(field(sj, "element", "/seed"), ctx.lattice, "/seed/element"),
                  has(sj, "cutoff") ? io::read_slope(sj["cutoff"], "/seed/cutoff") : Slope(Rational(0)), false};
  std::vector<WallDatum> walls;
  Json r;
  if (has(ctx.doc, "walls")) {
    const Json& wj = ctx.doc["walls"];
    if (!wj.is_array()) throw Error(ErrorKind::Input, "expected an array", "/walls");
    for (std::size_t i = 0; i < wj.size(); ++i) {
      const std::string p = "/walls/" + std::to_string(i);
      WallDatum w{io::read_slope(field(wj[i], "slope", p), p + "/slope"),
                  io::read_element(field(wj[i], "J", p), ctx.lattice, p + "/J")};
      located(p, [&] { validate_wall(*ctx.lattice, w); });
      walls.push_back(std::move(w));
    }
  } else {
    const Json& ej = field(ctx.doc, "entries", "");
    if (!ej.is_array()) throw Error(ErrorKind::Input, "expected an array", "/entries");
    std::vector<JEntry> js;
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const std::string p = "/entries/" + std::to_string(i);
      JEntry e{io::read_ints(field(ej[i], "beta", p), p + "/beta", ctx.lattice->rank1()),
               io::read_ints(field(ej[i], "c", p), p + "/c", ctx.lattice->rank0()),
               io::read_rational(field(ej[i], "value", p), p + "/value")};
      if (!ctx.lattice->is_effective(e.beta)) throw Error(ErrorKind::NotEffective, "entry class is not effective", p + "/beta");
      js.push_back(std::move(e));
    }
    if (!t.deg_bound) throw Error(ErrorKind::Input, "entries need a truncation deg_bound", "/truncation");
    if (seed.cutoff.is_infinite()) throw Error(ErrorKind::Input, "seed cutoff must be finite", "/seed/cutoff");
    walls = located("/entries", [&] { return walls_from_entries(ctx.lattice, js, seed.cutoff.value(), *t.deg_bound); });
    if (has(ctx.doc, "resum_groups") && ctx.doc["resum_groups"] == true) {
      auto groups = located("/entries", [&] {
        return enumerate_groups(*ctx.lattice, seed.element, js, seed.cutoff.value(), t.beta_cap);
      });
      Json gj = Json::array();
      for (const auto& [beta, f] : resum_groups(*ctx.lattice, groups, t))
        gj.push_back({{"beta", beta}, {"fraction", io::write_fraction(f)}});
      r["groups"] = gj;
      r["group_count"] = groups.size();
    }
  }
  SeedSeries out = located("/walls", [&] { return iterate_walls(seed, walls, t); });
  r["element"] = io::write_element(out.element);
  r["walls_crossed"] = walls.size();
  r["cutoff"] = to_string(out.cutoff);
  return {r, true, r.dump(2) + "\n"};
}

Result do_dtpt(Context& ctx) {
  const std::size_t n = read_vars(ctx.doc);
  LaurentSeries b = io::read_series(field(ctx.doc, "dt_beta", ""), n, "/dt_beta");
  LaurentSeries z = io::read_series(field(ctx.doc, "dt_zero", ""), n, "/dt_zero");
  LinearFunctional L = io::read_functional(field(ctx.doc, "functional", ""), n, "/functional");
  LaurentSeries s = located("/dt_zero", [&] { return dtpt_ratio(b, z, L); });
  return {{{"series", io::write_series(s)}}, true, series_table(s)};
}

Result do_dualize(Context& ctx) {
  load_lattice(ctx);
  if (has(ctx.doc, "family")) {
    const Json& fj = ctx.doc["family"];
    if (!fj.is_array()) throw Error(ErrorKind::Input, "expected an array", "/family");
    std::map<IntVector, RationalFunction> fam;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string p = "/family/" + std::to_string(i);
      IntVector beta = io::read_ints(field(fj[i], "beta", p), p + "/beta", ctx.lattice->rank1());
      if (!fam.emplace(beta, io::read_fraction(field(fj[i], "f", p), ctx.lattice->rank0(), p + "/f")).second)
        throw Error(ErrorKind::Input, "duplicate family entry", p + "/beta");
    }
    DualityReport rep = located("/family", [&] { return duality_check(*ctx.lattice, fam); });
    Json r = io::write_duality(rep);
    return {r, rep.passed, r.dump(2) + "\n"};
  }
  KClass a = io::read_class(field(ctx.doc, "class", ""), *ctx.lattice, "/class");
  Json r{{"image", io::write_class(ctx.lattice->dualize(a))}};
  return {r, true, r.dump(2) + "\n"};
}

std::string reexpand_table(const ReexpandVerdict& v) {
  std::ostringstream out;
  out << "premise verified: " << (v.premise_verified ? "yes" : "no") << "\n";
  for (const auto& c : v.cosets) {
    out << "coset " << Json(c.representative).dump() << " k in [" << c.k_min << ", " << c.k_max << "]: "
        << detect_table(c.fit);
  }
  out << "candidate verified: " << (v.plus_verified ? "yes" : "no") << "\n";
  out << "confirmed: " << (v.confirmed ? "yes" : "no") << "\n";
  return out.str();
}

Result do_reexpand(Context& ctx) {
  const std::int64_t mp = read_small_int(ctx.doc, "max_period", 4, 1), md = read_small_int(ctx.doc, "max_degree", 4, 0);
  if (has(ctx.doc, "mode") && ctx.doc["mode"] == "gamma") {
    load_lattice(ctx);
    const std::size_t n = ctx.lattice->rank0();
    RationalFunction f = io::read_fraction(field(ctx.doc, "f", ""), n, "/f");
    Rational gamma = io::read_rational(field(ctx.doc, "gamma", ""), "/gamma");
    IntVector b = io::read_ints(field(ctx.doc, "beta", ""), "/beta", ctx.lattice->rank1());
    LaurentSeries known = io::read_series(field(ctx.doc, "s_known", ""), n, "/s_known");
    LaurentSeries cand = io::read_series(field(ctx.doc, "s_candidate", ""), n, "/s_candidate");
    GammaVerdict v = located("/gamma", [&] { return cross_gamma_wall(*ctx.lattice, f, gamma, b, known, cand, mp, md); });
    Json r = io::write_gamma(v);
    if (!v.applicable) return {r, true, "no gamma-walls: nothing to check\n"};
    return {r, v.reexpand.confirmed, reexpand_table(v.reexpand)};
  }
  const std::size_t n = read_vars(ctx.doc);
  RationalFunction f = io::read_fraction(field(ctx.doc, "f", ""), n, "/f");
  LaurentSeries sm = io::read_series(field(ctx.doc, "s_minus", ""), n, "/s_minus");
  LaurentSeries sp = io::read_series(field(ctx.doc, "s_plus", ""), n, "/s_plus");
  Exponent c0 = io::read_ints(field(ctx.doc, "c0", ""), "/c0", n);
  LinearFunctional Lm = io::read_functional(field(ctx.doc, "L_minus", ""), n, "/L_minus");
  LinearFunctional Lp = io::read_functional(field(ctx.doc, "L_plus", ""), n, "/L_plus");
  ReexpandVerdict v = located("/c0", [&] { return reexpand_check(f, sm, sp, c0, Lm, Lp, mp, md); });
  return {io::write_reexpand(v), v.confirmed, reexpand_table(v)};
}

Result do_appendix_a(Context& ctx) {
  std::int64_t W = read_small_int(ctx.doc, "window", 10, 8);
  if (ctx.opt.window) {
    if (ctx.opt.window->get_den() != 1) throw Error(ErrorKind::Input, "appendix-a window must be an integer", "--window");
    W = to_int64(ctx.opt.window->get_num());
    if (W < 8) throw Error(ErrorKind::Input, "appendix-a window must be at least 8", "--window");
  }
  A1Report rep = run_a1(W);
  A1Model model = build_a1();
  ctx.spec = model.lattice->spec();
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"m", row.m}, {"x", to_string(row.x)}, {"y", to_string(row.y)}, {"diff", to_string(row.diff)}});
  Json dt0 = Json::array();
  for (const auto& c : rep.dt0_coeffs) dt0.push_back(to_string(c));
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json r{{"window", rep.window},
         {"rows", rows},
         {"dt0_coeffs", dt0},
         {"checks", checks},
         {"reexpand", io::write_reexpand(rep.reexpand)},
         {"passed", rep.passed},
         {"normalization", {{"deg", ctx.spec->deg}, {"l", ctx.spec->l}}}};
  r["fit"] = rep.fit ? io::write_quasipoly(*rep.fit) : Json(nullptr);

  std::ostringstream t;
  t << "z^2 layer, coefficient of q+^m q-^4\n";
  t << std::setw(5) << "m" << std::setw(12) << "orbifold" << std::setw(12) << "resolution" << std::setw(12) << "difference"
    << "\n";
  for (const auto& row : rep.rows)
    t << std::setw(5) << row.m << std::setw(12) << to_string(row.x) << std::setw(12) << to_string(row.y) << std::setw(12)
      << to_string(row.diff) << "\n";
  for (const auto& c : rep.checks)
    t << (c.passed ? "ok    " : "FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return {r, rep.passed, t.str()};
}

Result do_selfcheck(Context& ctx) {
  std::uint64_t seed = kDefaultSeed;
  if (has(ctx.doc, "seed")) seed = static_cast<std::uint64_t>(io::read_int(ctx.doc["seed"], "/seed"));
  if (ctx.opt.seed) seed = *ctx.opt.seed;
  const int trials = static_cast<int>(read_small_int(ctx.doc, "trials", 20, 1));
  SelfcheckReport rep = run_selfcheck(seed, trials);
  Json props = Json::array();
  std::ostringstream t;
  t << "seed " << rep.seed << "\n";
  for (const auto& p : rep.properties) {
    props.push_back({{"name", p.name}, {"trials", p.trials}, {"failures", p.failures}, {"first_failure", p.first_failure}});
    t << (p.failures == 0 ? "ok    " : "FAIL  ") << p.name << " (" << p.trials << " trials)"
      << (p.failures ? ": " + p.first_failure : "") << "\n";
  }
  return {{{"seed", rep.seed}, {"trials", trials}, {"properties", props}, {"passed", rep.passed}}, rep.passed, t.str()};
}

const std::map<std::string, std::function<Result(Context&)>>& handlers() {
  static const std::map<std::string, std::function<Result(Context&)>> h{
      {"expand", do_expand},       {"verify", do_verify},       {"resum", do_resum},   {"detect", do_detect},
      {"bracket", do_bracket},     {"exp-ad", do_exp_ad},       {"wallcross", do_wallcross},
      {"dtpt", do_dtpt},           {"dualize", do_dualize},     {"reexpand", do_reexpand},
      {"appendix-a", do_appendix_a}, {"selfcheck", do_selfcheck}};
  return h;
}

Json envelope(const std::string& kind) {
  return {{"tool", kToolName}, {"version", kVersion}, {"kind", kind.empty() ? Json(nullptr) : Json(kind)}};
}

Outcome failure(const std::string& kind, const std::string& error_kind, const std::string& message, const std::string& path,
                bool table) {
  Outcome o;
  o.exit_code = 2;
  o.report = envelope(kind);
  o.report["error"] = {{"kind", error_kind}, {"message", message}, {"path", path.empty() ? "/" : path}};
  if (table) o.table = "error (" + error_kind + ") at " + (path.empty() ? "/" : path) + ": " + message + "\n";
  return o;
}

}  // namespace

Outcome run(const Json& doc, const Options& options) {
  std::string kind;
  try {
    const Json& kj = field(doc, "kind", "");
    if (!kj.is_string()) throw Error(ErrorKind::Input, "kind must be a string", "/kind");
    kind = kj.get<std::string>();
    auto it = handlers().find(kind);
    if (it == handlers().end()) throw Error(ErrorKind::Input, "unknown kind '" + kind + "'", "/kind");
    Context ctx{doc, options, std::nullopt, nullptr};
    Result res = it->second(ctx);
    Outcome o;
    o.exit_code = res.ok ? 0 : 1;
    o.report = envelope(kind);
    o.report["lattice_fingerprint"] = ctx.spec ? Json(io::fingerprint(*ctx.spec)) : Json(nullptr);
    o.report["result"] = std::move(res.result);
    o.report["status"] = res.ok ? "ok" : "verification_failed";
    if (options.table) o.table = std::move(res.table);
    return o;
  } catch (const Error& e) {
    return failure(kind, error_code(e.kind()), e.what(), e.path(), options.table);
  } catch (const Json::exception& e) {
    return failure(kind, "input", e.what(), "", options.table);
  }
}

Outcome run_text(const std::string& text, const Options& options) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) return failure("", "input", "document is not valid JSON", "/", options.table);
  return run(doc, options);
}

std::string render(const Outcome& outcome, bool table) {
  if (table && !outcome.table.empty()) return outcome.table;
  return outcome.report.dump(2) + "\n";
}

}  // namespace dtwc::cli
