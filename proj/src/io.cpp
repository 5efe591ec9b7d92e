#include "zerodist/io.hpp"

#include <fstream>
#include <ostream>

#include "zerodist/errors.hpp"

namespace zerodist {

const Table& Document::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::out_of_range("no table '" + name + "'");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_cell(const Cell& c) {
  struct V {
    std::string operator()(const std::string& s) const { return csv_field(s); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<std::string>& v) const {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
      return csv_field(s);
    }
  };
  return std::visit(V{}, c);
}

Json json_cell(const Cell& c) {
  struct V {
    Json operator()(const std::string& s) const { return s; }
    Json operator()(double d) const {
      if (!std::isfinite(d)) return format_double(d);
      return d;
    }
    Json operator()(long long i) const { return i; }
    Json operator()(bool b) const { return b; }
    Json operator()(const std::vector<std::string>& v) const { return v; }
  };
  return std::visit(V{}, c);
}

}  // namespace

void write_csv(const Document& doc, std::ostream& os) {
  for (const auto& [k, v] : doc.meta.items()) os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& t : doc.tables) {
    if (doc.tables.size() > 1) os << "# table: " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  }
}

void write_json(const Document& doc, std::ostream& os) {
  Json data = Json::object();
  for (const auto& t : doc.tables) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < r.size() && i < t.columns.size(); ++i) o[t.columns[i]] = json_cell(r[i]);
      rows.push_back(std::move(o));
    }
    data[t.name] = std::move(rows);
  }
  Json top = Json::object();
  top["meta"] = doc.meta;
  top["data"] = std::move(data);
  os << top.dump(2) << "\n";
}

namespace {

Rational rational_of(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  throw BadParam("coefficients must be rational strings \"p/q\" or integers, got " + v.dump());
}

std::vector<Rational> coeff_list(const Json& v) {
  if (!v.is_array()) throw BadParam("coefficient list must be an array");
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(rational_of(e));
  return out;
}

RationalFnOfN rule(const Json& v) {
  if (!v.is_array() || v.size() != 2) throw BadParam("each rule must be [[numerator...],[denominator...]]");
  return RationalFnOfN(coeff_list(v[0]), coeff_list(v[1]));
}

}  // namespace

FamilySpec family_from_json(const Json& j) {
  if (!j.is_object()) throw BadParam("custom family must be a JSON object");
  FamilySpec f;
  f.name = j.value("name", std::string("custom"));
  const auto& a = j.at("alpha");
  const auto& b = j.at("beta");
  if (!a.is_array() || a.size() != 3) throw BadParam("alpha needs three rules (x^0, x^1, x^2)");
  if (!b.is_array() || b.size() != 2) throw BadParam("beta needs two rules (x^0, x^1)");
  for (int i = 0; i < 3; ++i) f.alpha[i] = rule(a[i]);
  for (int i = 0; i < 2; ++i) f.beta[i] = rule(b[i]);
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) f.params[k] = rational_of(v);
  f.start_index = j.value("start_index", 0L);
  f.validate();
  return f;
}

FamilySpec load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParam("cannot open custom family file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw BadParam("custom family file '" + path + "': " + e.what());
  }
  try {
    return family_from_json(j);
  } catch (const Json::exception& e) {
    throw BadParam("custom family file '" + path + "': " + e.what());
  }
}

}  // namespace zerodist
