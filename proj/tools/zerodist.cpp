#include <iostream>

#include <CLI11.hpp>

#include "zerodist/commands.hpp"
#include "zerodist/errors.hpp"

int main(int argc, char** argv) {
  using namespace zerodist;
  CLI::App app{"zero distributions of polynomial sequences from a differential-difference recurrence"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string sigma;
  std::vector<std::string> params;

  for (const char* name : {"gen", "zeros", "limit", "compare", "series"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--family", cfg.family, "builtin family name or custom JSON path")->required();
    sub->add_option("--n", cfg.n, "index n (N for series)");
    sub->add_option("--sigma", sigma, "scaling exponent as p/q");
    sub->add_option("--precision", cfg.precision, "decimal digits for zeros")->check(CLI::Range(16, kHighDigits - 2));
    sub->add_option("--grid", cfg.grid, "sample count for cdf/pdf")->check(CLI::Range(2, 1000000));
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path")->required();
    sub->add_option("--custom", cfg.custom, "custom family JSON");
    sub->add_option("--param", params, "family parameter key=p/q (repeatable)");
    sub->add_option("--window", cfg.window, "half-width of the plotting window");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!sigma.empty()) cfg.sigma = parse_rational(sigma);
    for (const auto& p : params) {
      auto eq = p.find('=');
      if (eq == std::string::npos) throw BadParam("--param expects key=value, got '" + p + "'");
      cfg.params[p.substr(0, eq)] = parse_rational(p.substr(eq + 1));
    }
    write_document(run_command(cfg), cfg);
  } catch (const Error& e) {
    std::cerr << "zerodist: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "zerodist: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
