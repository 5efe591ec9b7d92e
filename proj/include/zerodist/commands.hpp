#pragma once

#include <map>
#include <optional>
#include <string>

#include "zerodist/asymptotic.hpp"
#include "zerodist/io.hpp"

namespace zerodist {

struct RunConfig {
  std::string command;
  std::string family;  // builtin name or path to a custom-family JSON file
  std::optional<std::string> custom;
  std::map<std::string, Rational> params;
  int n = 10;
  std::optional<Rational> sigma;
  int precision = kDefaultPrecision;
  int grid = 201;
  std::optional<double> window;  // half-width for unbounded or unknown supports
  std::string format = "csv";
  std::string out;

  void validate() const;  // throws BadParam
};

// the family a config refers to, builtin defaults filled in
FamilySpec resolve_family(const RunConfig& cfg);

Document cmd_gen(const RunConfig& cfg);
Document cmd_zeros(const RunConfig& cfg);
Document cmd_limit(const RunConfig& cfg);
Document cmd_compare(const RunConfig& cfg);
Document cmd_series(const RunConfig& cfg);

Document run_command(const RunConfig& cfg);
void write_document(const Document& doc, const RunConfig& cfg);

}  // namespace zerodist
