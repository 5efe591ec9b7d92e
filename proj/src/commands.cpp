#include "zerodist/commands.hpp"

#include <cmath>
#include <fstream>

#include "zerodist/errors.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

void RunConfig::validate() const {
  if (n < 1) throw BadParam("n must be at least 1");
  if (precision < 16 || precision > kHighDigits - 2)
    throw BadParam("precision must lie in [16, " + std::to_string(kHighDigits - 2) + "]");
  if (grid < 2) throw BadParam("grid must be at least 2");
  if (format != "csv" && format != "json") throw BadParam("format must be csv or json");
  if (sigma && *sigma < 0) throw BadParam("sigma must be nonnegative");
  if (window && !(*window > 0)) throw BadParam("window must be positive");
}

namespace {

bool is_json_path(const std::string& s) {
  return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0;
}

std::optional<Builtin> builtin_of(const RunConfig& cfg) {
  if (cfg.custom || is_json_path(cfg.family)) return std::nullopt;
  auto b = builtin_id(cfg.family);
  if (!b) throw UnknownFamily("'" + cfg.family + "'");
  return b;
}

Json params_json(const FamilySpec& f) {
  Json j = Json::object();
  for (const auto& [k, v] : f.params) j[k] = to_string(v);
  return j;
}

Json base_meta(const RunConfig& cfg, const FamilySpec& f) {
  Json m = Json::object();
  m["command"] = cfg.command;
  m["family"] = f.name;
  m["params"] = params_json(f);
  return m;
}

SigmaChoice choose_sigma(const RunConfig& cfg, const FamilySpec& f) {
  if (cfg.sigma) return {ScalingLaw{*cfg.sigma}, false};
  return suggest_sigma(f);
}

Json limits_json(const LimitPair& lp) {
  Json j = Json::object();
  j["a2"] = to_string(lp.a2);
  j["a1"] = to_string(lp.a1);
  j["a0"] = to_string(lp.a0);
  j["b1"] = to_string(lp.b1);
  j["b0"] = to_string(lp.b0);
  return j;
}

std::vector<double> grid_over(double lo, double hi, int g) {
  std::vector<double> t(g);
  for (int i = 0; i < g; ++i) t[i] = i == g - 1 ? hi : lo + (hi - lo) * i / (g - 1);
  return t;
}

}  // namespace

FamilySpec resolve_family(const RunConfig& cfg) {
  if (cfg.custom) return load_family_file(*cfg.custom);
  if (is_json_path(cfg.family)) return load_family_file(cfg.family);
  auto b = builtin_id(cfg.family);
  if (!b) throw UnknownFamily("'" + cfg.family + "'");
  auto params = default_params(*b);
  for (const auto& [k, v] : cfg.params) params[k] = v;
  return builtin(cfg.family, params);
}

Document cmd_gen(const RunConfig& cfg) {
  cfg.validate();
  FamilySpec f = resolve_family(cfg);
  Document doc;
  doc.meta = base_meta(cfg, f);
  doc.meta["n"] = cfg.n;
  doc.meta["order"] = "ascending powers of x";
  Table t{"polynomials", {"n", "degree", "coefficients"}, {}};
  long k = 0;
  for (const auto& p : generate(f, cfg.n)) {
    std::vector<std::string> c;
    for (const auto& q : p.coefficients()) c.push_back(to_string(q));
    t.rows.push_back({static_cast<long long>(k++), static_cast<long long>(p.degree()), std::move(c)});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

Document cmd_zeros(const RunConfig& cfg) {
  cfg.validate();
  FamilySpec f = resolve_family(cfg);
  ScalingLaw sc = choose_sigma(cfg, f).scaling;
  ZeroTracker tr(f);
  ZeroStep step = tr.advance_to(cfg.n);
  IntPoly ip(squarefree_part(step.poly));
  int bits = static_cast<int>(std::ceil(cfg.precision * 3.3219280948873623)) + 4;
  for (auto& e : step.roots) e = refine_relative(e, ip, bits);
  HighFloat phi = sc.phi(cfg.n);

  Document doc;
  doc.meta = base_meta(cfg, f);
  doc.meta["n"] = cfg.n;
  doc.meta["sigma"] = to_string(sc.sigma);
  doc.meta["phi"] = format_high(phi, 20);
  doc.meta["precision"] = cfg.precision;
  doc.meta["all_real"] = step.all_real;
  doc.meta["interlaced"] = step.interlaces_previous.value_or(false);
  Table t{"zeros", {"k", "z", "z_float"}, {}};
  long long k = 1;
  for (const auto& e : step.roots) {
    HighFloat z = e.value / phi;
    t.rows.push_back({k++, format_high(z, cfg.precision), z.convert_to<double>()});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

Document cmd_series(const RunConfig& cfg) {
  cfg.validate();
  FamilySpec f = resolve_family(cfg);
  SigmaChoice sc = choose_sigma(cfg, f);
  LimitPair lp = compute_limits(f, sc.scaling);
  SeriesTail tail = series_coeffs(lp, sc.scaling, cfg.n);
  Document doc;
  doc.meta = base_meta(cfg, f);
  doc.meta["N"] = cfg.n;
  doc.meta["sigma"] = to_string(sc.scaling.sigma);
  if (sc.multiple_sigma) doc.meta["warning"] = "MultipleSigma: several sigma balance the degrees; smallest chosen";
  doc.meta["limits"] = limits_json(lp);
  Table t{"series", {"n", "c"}, {}};
  for (int n = 1; n <= tail.size(); ++n) t.rows.push_back({static_cast<long long>(n), to_string(tail.c(n))});
  doc.tables.push_back(std::move(t));
  return doc;
}

Document cmd_limit(const RunConfig& cfg) {
  cfg.validate();
  FamilySpec f = resolve_family(cfg);
  SigmaChoice sc = choose_sigma(cfg, f);
  LimitMeasure lm;
  std::string source;
  if (auto b = builtin_of(cfg)) {
    lm = closed_form_cdf(*b);
    source = "closed_form";
  } else {
    if (sc.scaling.sigma != 0)
      throw BadParam("limit for a custom family needs sigma = 0 (Riccati case); got sigma = " +
                     to_string(sc.scaling.sigma));
    LimitPair lp = compute_limits(f, sc.scaling);
    StieltjesEvaluator S = riccati_solve(lp);
    double lo, hi;
    Rational disc = lp.a1 * lp.a1 - 4 * lp.a2 * lp.a0;
    if (lp.a2 != 0 && disc > 0 && !cfg.window) {
      double r = std::sqrt(to_double(disc)) / std::fabs(to_double(2 * lp.a2));
      double c = -to_double(lp.a1 / (2 * lp.a2));
      lo = c - r;
      hi = c + r;
    } else {
      double w = cfg.window.value_or(8.0);
      lo = -w;
      hi = w;
    }
    lm = inverted_measure(S, lo, hi);
    source = "riccati";
  }
  auto [lo, hi] = lm.bounded() ? std::pair{lm.support_lo, lm.support_hi}
                               : (cfg.window ? std::pair{-*cfg.window, *cfg.window} : lm.window());
  Document doc;
  doc.meta = base_meta(cfg, f);
  doc.meta["sigma"] = to_string(sc.scaling.sigma);
  doc.meta["support_lo"] = format_double(lm.support_lo);
  doc.meta["support_hi"] = format_double(lm.support_hi);
  doc.meta["window_lo"] = format_double(lo);
  doc.meta["window_hi"] = format_double(hi);
  doc.meta["source"] = source;
  Table t{"limit", {"t", "cdf", "pdf"}, {}};
  for (double x : grid_over(lo, hi, cfg.grid)) t.rows.push_back({x, lm.cdf(x), lm.pdf(x)});
  doc.tables.push_back(std::move(t));
  return doc;
}

Document cmd_compare(const RunConfig& cfg) {
  cfg.validate();
  auto b = builtin_of(cfg);
  if (!b) throw BadParam("compare needs a builtin family");
  FamilySpec f = resolve_family(cfg);
  SigmaChoice sc = choose_sigma(cfg, f);
  LimitPair lp = compute_limits(f, sc.scaling);

  ZeroTracker tr(f);
  bool interlaced_all = true;
  for (int k = 1; k <= cfg.n; ++k) interlaced_all = tr.advance().interlaces_previous.value_or(false) && interlaced_all;
  const ZeroStep& step = tr.current();
  HighFloat phi = sc.scaling.phi(cfg.n);
  StepMeasure emp = empirical_cdf(step.roots, cfg.n, phi);
  LimitMeasure lm = closed_form_cdf(*b);
  double ks = ks_distance(emp, lm);

  SeriesTail series = series_coeffs(lp, sc.scaling, 20);
  SeriesTail oracle = closed_form_series(*b, 20);
  bool series_match = series.coeffs == oracle.coeffs;

  Document doc;
  doc.meta = base_meta(cfg, f);
  doc.meta["n"] = cfg.n;
  doc.meta["sigma"] = to_string(sc.scaling.sigma);
  doc.meta["phi"] = format_high(phi, 20);
  doc.meta["limits"] = limits_json(lp);
  doc.meta["all_real"] = step.all_real;
  doc.meta["interlaced"] = interlaced_all;
  doc.meta["ks"] = ks;
  doc.meta["series_match"] = series_match;
  doc.meta["support_lo"] = format_double(lm.support_lo);
  doc.meta["support_hi"] = format_double(lm.support_hi);

  Table steps{"steps", {"k", "z", "psi_n"}, {}};
  Table profile{"profile", {"k", "z", "psi_n_left", "psi_n", "psi", "deviation"}, {}};
  for (int k = 0; k < cfg.n; ++k) {
    double z = emp.zeros[k];
    double g = lm.cdf(z), l = emp.cdf_left(z), r = emp.cdf(z);
    steps.rows.push_back({static_cast<long long>(k + 1), z, r});
    profile.rows.push_back({static_cast<long long>(k + 1), z, l, r, g, std::max(std::fabs(l - g), std::fabs(r - g))});
  }

  Table mom{"moments", {"k", "empirical", "series", "series_float", "quadrature"}, {}};
  std::vector<double> quad = moments(lm, 8);
  for (int k = 0; k <= 8; ++k) {
    HighFloat s = 0;
    for (const auto& z : emp.scaled_zeros) s += boost::multiprecision::pow(z, k);
    s /= cfg.n;
    const Rational& c = series.c(k + 1);
    mom.rows.push_back({static_cast<long long>(k), s.convert_to<double>(), to_string(c), to_double(c), quad[k]});
  }

  Table lim{"limit", {"t", "cdf", "pdf"}, {}};
  auto [lo, hi] = cfg.window ? std::pair{-*cfg.window, *cfg.window} : lm.window();
  for (double x : grid_over(lo, hi, cfg.grid)) lim.rows.push_back({x, lm.cdf(x), lm.pdf(x)});

  Table ser{"series", {"n", "c", "closed_form"}, {}};
  for (int n = 1; n <= 20; ++n)
    ser.rows.push_back({static_cast<long long>(n), to_string(series.c(n)), to_string(oracle.c(n))});

  doc.tables = {std::move(steps), std::move(lim), std::move(mom), std::move(profile), std::move(ser)};
  return doc;
}

Document run_command(const RunConfig& cfg) {
  if (cfg.command == "gen") return cmd_gen(cfg);
  if (cfg.command == "zeros") return cmd_zeros(cfg);
  if (cfg.command == "limit") return cmd_limit(cfg);
  if (cfg.command == "compare") return cmd_compare(cfg);
  if (cfg.command == "series") return cmd_series(cfg);
  throw BadParam("unknown command '" + cfg.command + "'");
}

void write_document(const Document& doc, const RunConfig& cfg) {
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw BadParam("cannot open output file '" + cfg.out + "'");
  if (cfg.format == "json")
    write_json(doc, os);
  else
    write_csv(doc, os);
  if (!os) throw BadParam("failed writing '" + cfg.out + "'");
}

}  // namespace zerodist
