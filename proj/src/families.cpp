#include "zerodist/families.hpp"

#include <algorithm>
#include <sstream>

#include "zerodist/errors.hpp"

namespace zerodist {

// ---------------------------------------------------------------- ExactPoly

ExactPoly::ExactPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

ExactPoly ExactPoly::constant(const Rational& c) { return ExactPoly({c}); }

ExactPoly ExactPoly::monomial(const Rational& c, int power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return ExactPoly(std::move(v));
}

void ExactPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational ExactPoly::coeff(int i) const {
  return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
}

ExactPoly ExactPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return ExactPoly(std::move(d));
}

Rational ExactPoly::operator()(const Rational& x) const {
  Rational h = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) h = h * x + *it;
  return h;
}

double ExactPoly::eval(double x) const {
  double h = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) h = h * x + to_double(*it);
  return h;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
  return ExactPoly(std::move(r));
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
  return ExactPoly(std::move(r));
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return ExactPoly(std::move(r));
}

ExactPoly operator*(const Rational& s, const ExactPoly& a) {
  std::vector<Rational> r = a.c_;
  for (auto& q : r) q *= s;
  return ExactPoly(std::move(r));
}

std::pair<ExactPoly, ExactPoly> ExactPoly::divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {ExactPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    Rational f = r[k] / b.leading();
    q[k - db] = f;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.c_[i];
  }
  return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
}

ExactPoly ExactPoly::gcd(ExactPoly a, ExactPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (1 / a.leading()) * a;
}

std::string ExactPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    Rational q = c_[i];
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    Rational aq = abs(q);
    if (aq != 1 || i == 0) os << aq.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------ RationalFnOfN

namespace {

void strip(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

Rational horner(const std::vector<Rational>& v, const Rational& x) {
  Rational h = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) h = h * x + *it;
  return h;
}

}  // namespace

RationalFnOfN::RationalFnOfN() : den_{Rational(1)} {}

RationalFnOfN::RationalFnOfN(std::vector<Rational> num, std::vector<Rational> den)
    : num_(std::move(num)), den_(std::move(den)) {
  for (auto& q : num_) q.canonicalize();
  for (auto& q : den_) q.canonicalize();
  strip(num_);
  strip(den_);
  if (den_.empty()) throw BadParam("rational function with zero denominator");
  if (num_.empty()) {
    den_ = {Rational(1)};
    return;
  }
  // clear denominators, then remove the common integer content
  Integer l = 1;
  for (auto* v : {&num_, &den_})
    for (auto& q : *v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Integer g = 0;
  for (auto* v : {&num_, &den_})
    for (auto& q : *v) {
      q *= l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
  if (den_.back() < 0) g = -g;
  for (auto* v : {&num_, &den_})
    for (auto& q : *v) q /= g;
}

RationalFnOfN RationalFnOfN::constant(const Rational& c) { return RationalFnOfN({c}, {1}); }

int RationalFnOfN::degree_difference() const {
  return static_cast<int>(num_.size()) - static_cast<int>(den_.size());
}

Rational RationalFnOfN::leading_ratio() const {
  if (num_.empty()) return 0;
  return num_.back() / den_.back();
}

Rational RationalFnOfN::operator()(long n) const {
  Rational x(n);
  Rational d = horner(den_, x);
  if (d == 0) throw DenominatorZeroAtN(n);
  return horner(num_, x) / d;
}

bool RationalFnOfN::finite_from(long n0) const {
  if (den_.size() == 1) return true;
  // integer roots are bounded by 1 + max|d_i/d_top|
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < den_.size(); ++i) bound = std::max(bound, Rational(abs(den_[i] / den_.back())));
  bound += 1;
  Integer top = bound.get_num() / bound.get_den() + 1;
  if (top > 10'000'000) throw BadParam("coefficient denominator too large to certify finiteness");
  for (long n = n0; n <= top.get_si(); ++n)
    if (horner(den_, Rational(n)) == 0) return false;
  return true;
}

// --------------------------------------------------------------- FamilySpec

void FamilySpec::validate() const {
  for (const auto& f : alpha)
    if (!f.finite_from(start_index)) throw BadParam(name + ": an alpha rule has a pole at some n >= start_index");
  for (const auto& f : beta)
    if (!f.finite_from(start_index)) throw BadParam(name + ": a beta rule has a pole at some n >= start_index");
  if (alpha[0].is_zero() && alpha[1].is_zero() && alpha[2].is_zero() && beta[0].is_zero() && beta[1].is_zero())
    throw BadParam(name + ": all coefficient rules vanish");
}

namespace {

const std::vector<std::pair<std::string, Builtin>>& table() {
  static const std::vector<std::pair<std::string, Builtin>> t = {
      {"jacobi", Builtin::jacobi},
      {"laguerre", Builtin::laguerre},
      {"hermite", Builtin::hermite},
      {"bell", Builtin::bell},
      {"inverse_erf", Builtin::inverse_erf},
  };
  return t;
}

Rational need(const std::map<std::string, Rational>& params, const std::string& fam, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw BadParam(fam + " requires parameter '" + key + "'");
  if (it->second <= -1) throw BadParam(fam + ": " + key + " must exceed -1");
  return it->second;
}

void reject_extra(const std::map<std::string, Rational>& params, const std::string& fam,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw BadParam(fam + " has no parameter '" + k + "'");
  }
}

}  // namespace

std::optional<Builtin> builtin_id(const std::string& name) {
  for (const auto& [k, v] : table())
    if (k == name) return v;
  return std::nullopt;
}

std::string builtin_name(Builtin b) {
  for (const auto& [k, v] : table())
    if (v == b) return k;
  return "?";
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, b] : table()) v.push_back(k);
    return v;
  }();
  return names;
}

FamilySpec builtin(const std::string& name, const std::map<std::string, Rational>& params) {
  auto id = builtin_id(name);
  if (!id) throw UnknownFamily("'" + name + "'");
  FamilySpec f;
  f.name = name;
  f.params = params;
  using R = RationalFnOfN;
  switch (*id) {
    case Builtin::jacobi: {
      reject_extra(params, name, {"alpha", "beta"});
      Rational a = need(params, name, "alpha"), b = need(params, name, "beta");
      Rational s = a + b;
      // at n=0 the factor 2n+a+b+1 vanishes when a+b=-1
      if (s == -1) throw BadParam("jacobi: alpha+beta=-1 makes the first recurrence step degenerate");
      std::vector<Rational> d1 = {s + 1, 2};
      f.alpha[2] = R({1}, d1);
      f.alpha[0] = R({-1}, d1);
      f.beta[1] = R({s + 1, 1}, d1);
      f.beta[0] = R({(s + 1) * (a - b), a - b}, {(s + 1) * (s + 2), 4 * s + 6, 4});
      break;
    }
    case Builtin::laguerre: {
      reject_extra(params, name, {"alpha"});
      Rational a = need(params, name, "alpha");
      f.alpha[1] = R::constant(-1);
      f.beta[1] = R::constant(1);
      f.beta[0] = R({-(a + 1), -1}, {1});
      break;
    }
    case Builtin::hermite:
      reject_extra(params, name, {});
      f.alpha[0] = R::constant(-1);
      f.beta[1] = R::constant(2);
      break;
    case Builtin::bell:
      reject_extra(params, name, {});
      f.alpha[1] = R::constant(1);
      f.beta[1] = R::constant(1);
      break;
    case Builtin::inverse_erf:
      reject_extra(params, name, {});
      f.alpha[0] = R({-1}, {1, 1});
      f.beta[1] = R::constant(1);
      break;
  }
  f.validate();
  return f;
}

ExactPoly next_poly(const ExactPoly& p, long n, const FamilySpec& fam) {
  if (n < fam.start_index) throw BadParam("n below the family start index");
  Rational a0 = fam.alpha[0](n), a1 = fam.alpha[1](n), a2 = fam.alpha[2](n);
  Rational b0 = fam.beta[0](n), b1 = fam.beta[1](n);
  int d = p.degree();
  std::vector<Rational> r(std::max(d + 2, 0));
  for (int k = 0; k <= d + 1; ++k) {
    // coefficient of x^k in A p' + B p
    Rational v = b0 * p.coeff(k) + b1 * p.coeff(k - 1);
    v += a0 * p.coeff(k + 1) * (k + 1);
    if (k >= 1) v += a1 * p.coeff(k) * k;
    if (k >= 2) v += a2 * p.coeff(k - 1) * (k - 1);
    r[k] = v;
  }
  return ExactPoly(std::move(r));
}

std::vector<ExactPoly> generate(const FamilySpec& fam, int N) {
  if (N < 0) throw BadParam("N must be nonnegative");
  std::vector<ExactPoly> out;
  out.reserve(N + 1);
  out.push_back(ExactPoly::constant(1));
  for (int k = 0; k < N; ++k) out.push_back(next_poly(out.back(), fam.start_index + k, fam));
  return out;
}

}  // namespace zerodist
