#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zerodist/asymptotic.hpp"
#include "zerodist/commands.hpp"
#include "zerodist/errors.hpp"
#include "zerodist/rootfind.hpp"
#include "zerodist/specfun.hpp"

namespace py = pybind11;
using namespace zerodist;

namespace {

using ParamMap = std::map<std::string, std::string>;

FamilySpec family_of(const std::string& name, const ParamMap& params) {
  RunConfig cfg;
  cfg.family = name;
  for (const auto& [k, v] : params) cfg.params[k] = parse_rational(v);
  return resolve_family(cfg);
}

Builtin builtin_of(const std::string& name) {
  auto b = builtin_id(name);
  if (!b) throw UnknownFamily("'" + name + "'");
  return *b;
}

ScalingLaw scaling_of(const FamilySpec& f, const std::optional<std::string>& sigma) {
  return sigma ? ScalingLaw{parse_rational(*sigma)} : suggest_sigma(f).scaling;
}

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "zero distributions of polynomial sequences P_{n+1} = A_n P_n' + B_n P_n";
  m.attr("__version__") = ZERODIST_VERSION;

  static py::exception<Error> base(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      base(e.what());
    }
  });

  m.def("builtins", &builtin_names);

  m.def(
      "generate",
      [](const std::string& family, int n, const ParamMap& params) {
        std::vector<std::vector<std::string>> out;
        for (const auto& p : generate(family_of(family, params), n)) out.push_back(strings(p.coefficients()));
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("params") = ParamMap{},
      "coefficients of P_0..P_n, ascending powers, as 'p/q' strings");

  m.def(
      "scaled_zeros",
      [](const std::string& family, int n, const ParamMap& params, std::optional<std::string> sigma) {
        FamilySpec f = family_of(family, params);
        ScalingLaw sc = scaling_of(f, sigma);
        ZeroTracker tr(f);
        const ZeroStep& step = tr.advance_to(n);
        IntPoly ip(squarefree_part(step.poly));
        HighFloat phi = sc.phi(n);
        std::vector<double> z;
        for (const auto& e : step.roots)
          z.push_back(HighFloat(refine_relative(e, ip, 80).value / phi).convert_to<double>());
        return py::make_tuple(z, step.all_real, step.interlaces_previous.value_or(false));
      },
      py::arg("family"), py::arg("n"), py::arg("params") = ParamMap{}, py::arg("sigma") = py::none(),
      "(zeros / phi(n), all_real, interlaces_previous)");

  m.def(
      "series",
      [](const std::string& family, int N, const ParamMap& params, std::optional<std::string> sigma) {
        FamilySpec f = family_of(family, params);
        ScalingLaw sc = scaling_of(f, sigma);
        return strings(series_coeffs(compute_limits(f, sc), sc, N).coeffs);
      },
      py::arg("family"), py::arg("N"), py::arg("params") = ParamMap{}, py::arg("sigma") = py::none());

  m.def("closed_form_series", [](const std::string& family, int N) {
    return strings(closed_form_series(builtin_of(family), N).coeffs);
  });

  m.def("stieltjes", [](const std::string& family, Complex z) { return closed_form_S(builtin_of(family))(z); });
  m.def("cdf", [](const std::string& family, double t) { return closed_form_cdf(builtin_of(family)).cdf(t); });
  m.def("pdf", [](const std::string& family, double t) { return closed_form_cdf(builtin_of(family)).pdf(t); });
  m.def("moments", [](const std::string& family, int kmax) { return moments(closed_form_cdf(builtin_of(family)), kmax); });

  m.def(
      "ks",
      [](const std::string& family, int n) {
        FamilySpec f = family_of(family, {});
        ScalingLaw sc = suggest_sigma(f).scaling;
        ZeroTracker tr(f);
        StepMeasure emp = empirical_cdf(tr.advance_to(n).roots, n, sc.phi(n));
        return ks_distance(emp, closed_form_cdf(builtin_of(family)));
      },
      py::arg("family"), py::arg("n"));

  m.def(
      "abel_kappa",
      [](const std::string& family) -> std::optional<std::string> {
        FamilySpec f = family_of(family, {});
        ScalingLaw sc = suggest_sigma(f).scaling;
        if (sc.sigma == 0) return std::nullopt;  // Riccati case, no Abel form
        auto data = abel_canonical(compute_limits(f, sc), sc);
        if (!data.R_as_linear) return std::nullopt;
        return to_string(*data.R_as_linear);
      },
      "kappa with R(x) = kappa x in the canonical Abel form, or None");

  m.def("lambert_w0", &lambert_w0);
  m.def("dawson", &dawson);
  m.def("faddeeva", &faddeeva);

  m.def(
      "run",
      [](const std::string& command, const std::string& family, int n, std::optional<std::string> sigma,
         int precision, int grid, const ParamMap& params) {
        RunConfig cfg;
        cfg.command = command;
        cfg.family = family;
        cfg.n = n;
        if (sigma) cfg.sigma = parse_rational(*sigma);
        cfg.precision = precision;
        cfg.grid = grid;
        for (const auto& [k, v] : params) cfg.params[k] = parse_rational(v);
        std::ostringstream os;
        write_json(run_command(cfg), os);
        return os.str();
      },
      py::arg("command"), py::arg("family"), py::arg("n") = 10, py::arg("sigma") = py::none(),
      py::arg("precision") = kDefaultPrecision, py::arg("grid") = 201, py::arg("params") = ParamMap{},
      "run a CLI command and return its JSON document as text");
}
