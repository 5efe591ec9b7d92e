#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zerodist/families.hpp"

namespace zerodist {

using Json = nlohmann::ordered_json;

// a table cell; in CSV a string list becomes one quoted, comma-joined field
using Cell = std::variant<std::string, double, long long, bool, std::vector<std::string>>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Document {
  Json meta = Json::object();
  std::vector<Table> tables;

  const Table& table(const std::string& name) const;
};

void write_csv(const Document& doc, std::ostream& os);
void write_json(const Document& doc, std::ostream& os);

// {"name":..., "alpha":[[num],[den]] x3, "beta":[[num],[den]] x2, "params":{...}, "start_index":n0}
FamilySpec family_from_json(const Json& j);
FamilySpec load_family_file(const std::string& path);

}  // namespace zerodist
