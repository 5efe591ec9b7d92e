#include <algorithm>
#include <set>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"

namespace zerodist {

HighFloat ScalingLaw::phi(long n) const {
  if (sigma == 0) return 1;
  if (sigma.get_den() == 1) return boost::multiprecision::pow(HighFloat(n), static_cast<int>(sigma.get_num().get_si()));
  return boost::multiprecision::pow(HighFloat(n), to_high(sigma));
}

Complex LimitPair::a(Complex z) const { return (to_double(a2) * z + to_double(a1)) * z + to_double(a0); }
Complex LimitPair::b(Complex z) const { return to_double(b1) * z + to_double(b0); }
Complex LimitPair::da(Complex z) const { return 2.0 * to_double(a2) * z + to_double(a1); }
Complex LimitPair::db() const { return to_double(b1); }

std::map<std::string, Rational> default_params(Builtin family) {
  switch (family) {
    case Builtin::jacobi: return {{"alpha", 0}, {"beta", 0}};
    case Builtin::laguerre: return {{"alpha", 0}};
    default: return {};
  }
}

namespace {

// exponent of n in n^offset * rule(n) as n -> infinity: offset + deg num - deg den
struct Balance {
  const RationalFnOfN* fn;
  Rational base;   // exponent at sigma = 0
  Rational slope;  // d exponent / d sigma
  bool is_a;
  int j;
  Rational at(const Rational& s) const { return base + slope * s; }
};

std::vector<Balance> balances(const FamilySpec& fam) {
  std::vector<Balance> v;
  for (int j = 0; j < 3; ++j)
    if (!fam.alpha[j].is_zero())
      v.push_back({&fam.alpha[j], Rational(1 + fam.alpha[j].degree_difference()), Rational(j - 2), true, j});
  for (int j = 0; j < 2; ++j)
    if (!fam.beta[j].is_zero())
      v.push_back({&fam.beta[j], Rational(fam.beta[j].degree_difference()), Rational(j - 1), false, j});
  return v;
}

}  // namespace

LimitPair compute_limits(const FamilySpec& fam, const ScalingLaw& scaling) {
  if (scaling.sigma < 0) throw BadParam("sigma must be nonnegative");
  Rational out[2][3] = {};
  for (const auto& b : balances(fam)) {
    Rational e = b.at(scaling.sigma);
    if (e > 0) throw DivergentLimit(b.j, b.is_a ? 'a' : 'b');
    if (e == 0) out[b.is_a ? 0 : 1][b.j] = b.fn->leading_ratio();
  }
  LimitPair lp{out[0][2], out[0][1], out[0][0], out[1][1], out[1][0]};
  if (lp.a2 == 0 && lp.a1 == 0 && lp.a0 == 0) throw BadParam(fam.name + ": limit a(z) vanishes identically for this sigma");
  return lp;
}

SigmaChoice suggest_sigma(const FamilySpec& fam) {
  auto bal = balances(fam);
  std::set<Rational> cand = {Rational(0)};
  for (const auto& b : bal)
    if (b.slope != 0) {
      Rational r = -b.base / b.slope;
      if (r >= 0) cand.insert(r);
    }
  std::vector<Rational> pts(cand.begin(), cand.end());
  std::vector<Rational> tests = pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) tests.push_back((pts[i] + pts[i + 1]) / 2);
  tests.push_back(pts.back() + 1);
  std::sort(tests.begin(), tests.end());

  std::vector<Rational> ok;
  for (const auto& s : tests) {
    bool finite = true, a_live = false, b_live = false;
    for (const auto& b : bal) {
      Rational e = b.at(s);
      if (e > 0) finite = false;
      if (e == 0) (b.is_a ? a_live : b_live) = true;
    }
    if (finite && a_live && b_live) ok.push_back(s);
  }
  if (ok.empty()) throw NoValidSigma(fam.name + ": no sigma >= 0 balances the coefficient degrees");
  SigmaChoice c;
  c.scaling.sigma = ok.front();
  c.multiple_sigma = ok.size() > 1;
  return c;
}

SeriesTail series_coeffs(const LimitPair& lp, const ScalingLaw& scaling, int N) {
  if (N < 1) throw BadParam("series_coeffs: N must be at least 1");
  const Rational& s = scaling.sigma;
  std::vector<Rational> c(N + 1);  // c[0] = 0
  c[1] = 1;
  for (int n = 2; n <= N; ++n) {
    Rational bracket = lp.a2 * (n - 1) + (s * n - s + 1) * (lp.a2 + lp.b1);
    if (bracket == 0) throw SeriesObstruction(n);
    Rational rhs = ((2 * s - 1 - s * n) * (lp.a1 + lp.b0) - lp.a1 * (n - 2)) * c[n - 1];
    rhs -= lp.a0 * (n - 2) * c[n - 2];
    for (int k = 0; k <= n - 3; ++k) {
      rhs -= (s * k + 1) * c[k + 1] * (lp.a0 * c[n - 2 - k] + lp.a1 * c[n - 1 - k]);
      rhs -= lp.a2 * (s * k + s + 1) * c[k + 2] * c[n - 1 - k];
    }
    c[n] = rhs / bracket;
  }
  return {std::vector<Rational>(c.begin() + 1, c.end())};
}

SeriesTail reduced_inverse_erf_coeffs(int N) {
  if (N < 2) throw BadParam("reduced_inverse_erf_coeffs: N must be at least 2");
  std::vector<Rational> c(N + 1);
  c[1] = 1;
  c[2] = 0;
  for (int m = 1; m + 2 <= N; ++m) {
    Rational v = m * c[m];
    for (int k = 0; k <= m - 1; ++k) v += c[k + 1] * c[m - k];
    c[m + 2] = v;
  }
  return {std::vector<Rational>(c.begin() + 1, c.end())};
}

// ------------------------------------------------------ formal power series

namespace {

using Fps = std::vector<Rational>;  // truncated at a fixed length

Fps inverse(const Fps& a) {
  Fps r(a.size());
  r[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += a[k] * r[n - k];
    r[n] = -s / a[0];
  }
  return r;
}

// sqrt of a series with constant term 1
Fps sqrt1(const Fps& a) {
  Fps r(a.size());
  r[0] = 1;
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational s = a[n];
    for (std::size_t k = 1; k < n; ++k) s -= r[k] * r[n - k];
    r[n] = s / 2;
  }
  return r;
}

// exp of a series with zero constant term
Fps exp0(const Fps& f) {
  Fps e(f.size());
  e[0] = 1;
  for (std::size_t n = 1; n < f.size(); ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += static_cast<long>(k) * f[k] * e[n - k];
    e[n] = s / static_cast<long>(n);
  }
  return e;
}

Fps shift(const Fps& a, int by, const Rational& scale) {  // scale * x^by * a
  Fps r(a.size());
  for (std::size_t i = 0; i + by < a.size(); ++i) r[i + by] = scale * a[i];
  return r;
}

}  // namespace

SeriesTail closed_form_series(Builtin family, int N) {
  const std::size_t L = N + 1;
  Fps one(L), S;
  one[0] = 1;
  auto poly = [&](std::initializer_list<std::pair<int, Rational>> terms) {
    Fps p(L);
    for (const auto& [k, v] : terms)
      if (k < static_cast<int>(L)) p[k] += v;
    return p;
  };
  switch (family) {
    case Builtin::jacobi:  // x / sqrt(1 - x^2)
      S = shift(inverse(sqrt1(poly({{0, 1}, {2, -1}}))), 1, 1);
      break;
    case Builtin::laguerre: {  // 2x / (1 + sqrt(1 - 4x))
      Fps d = sqrt1(poly({{0, 1}, {1, -4}}));
      d[0] += 1;
      S = shift(inverse(d), 1, 2);
      break;
    }
    case Builtin::hermite: {  // 2x / (1 + sqrt(1 - 2x^2))
      Fps d = sqrt1(poly({{0, 1}, {2, -2}}));
      d[0] += 1;
      S = shift(inverse(d), 1, 2);
      break;
    }
    case Builtin::bell: {  // exp(W(x)) - 1, W from w = x exp(-w)
      Fps w(L);
      for (std::size_t it = 0; it < L; ++it) {
        Fps m = w;
        for (auto& v : m) v = -v;
        w = shift(exp0(m), 1, 1);
      }
      S = exp0(w);
      S[0] = 0;
      break;
    }
    case Builtin::inverse_erf: {
      auto r = reduced_inverse_erf_coeffs(std::max(N, 2));
      r.coeffs.resize(N);
      return r;
    }
  }
  return {std::vector<Rational>(S.begin() + 1, S.end())};
}

}  // namespace zerodist
