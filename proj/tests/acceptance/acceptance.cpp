// Checks the acceptance criteria end to end; one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zerodist/asymptotic.hpp"
#include "zerodist/commands.hpp"
#include "zerodist/errors.hpp"
#include "zerodist/rootfind.hpp"
#include "zerodist/specfun.hpp"

using namespace zerodist;

namespace {

constexpr double kPi = std::numbers::pi;
const Builtin kAll[] = {Builtin::jacobi, Builtin::laguerre, Builtin::hermite, Builtin::bell, Builtin::inverse_erf};

FamilySpec fam(Builtin b) { return builtin(builtin_name(b), default_params(b)); }
ScalingLaw sigma_of(Builtin b) { return suggest_sigma(fam(b)).scaling; }
LimitPair limits_of(Builtin b) { return compute_limits(fam(b), sigma_of(b)); }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& s) {
    if (ok) note << s;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 50 points off the real axis, spread over a box around every support
std::vector<Complex> off_support_points(int count) {
  std::vector<Complex> z;
  for (int i = 0; i < count; ++i) {
    double x = -5 + 10.0 * i / (count - 1);
    double y = (0.3 + 2.7 * ((i * 7) % count) / double(count)) * (i % 2 ? -1 : 1);
    z.emplace_back(x, y);
  }
  return z;
}

void c1_interlacing(Outcome& o) {
  auto t0 = Clock::now();
  for (Builtin b : kAll) {
    ZeroTracker tr(fam(b));
    for (int n = 1; n <= 60; ++n) {
      const ZeroStep& s = tr.advance();
      if (!s.all_real) o.fail(builtin_name(b) + ": complex zeros at n=" + std::to_string(n));
      if (n >= 2 && !s.interlaces_previous.value_or(false))
        o.fail(builtin_name(b) + ": interlacing fails at n=" + std::to_string(n));
    }
  }
  double dt = seconds_since(t0);
  o.note << (o.ok ? "" : "; ") << "n<=60 for 5 families in " << dt << " s";
  if (dt > 300) o.fail(" (over 5 minutes)");
}

Rational binom(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

void c2_series(Outcome& o) {
  const int N = 20;
  for (Builtin b : kAll) {
    SeriesTail s = series_coeffs(limits_of(b), sigma_of(b), N);
    if (s.size() != N) o.fail(builtin_name(b) + ": wrong length");
    std::vector<Rational> want;
    for (long n = 1; n <= N; ++n) {
      long m = n - 1, k = m / 2;
      switch (b) {
        case Builtin::laguerre: want.push_back(binom(2 * m, m) / (m + 1)); break;
        case Builtin::hermite:
          want.push_back(m % 2 ? Rational(0) : Rational(binom(2 * k, k) / (k + 1) / Rational(Integer(1) << k)));
          break;
        case Builtin::jacobi:
          want.push_back(m % 2 ? Rational(0) : Rational(binom(2 * k, k) / Rational(Integer(1) << (2 * k))));
          break;
        case Builtin::bell: {
          Integer p, f;
          mpz_ui_pow_ui(p.get_mpz_t(), m, m);
          mpz_fac_ui(f.get_mpz_t(), m + 1);
          Rational q(m % 2 ? Integer(-p) : p, f);
          q.canonicalize();
          want.push_back(q);
          break;
        }
        case Builtin::inverse_erf: break;
      }
    }
    if (b == Builtin::inverse_erf) want = reduced_inverse_erf_coeffs(N).coeffs;
    for (int n = 1; n <= N && n <= s.size(); ++n)
      if (s.c(n) != want[n - 1]) {
        o.fail(builtin_name(b) + ": c_" + std::to_string(n) + " = " + to_string(s.c(n)) + ", expected " +
               to_string(want[n - 1]));
        break;
      }
  }
  if (o.ok) o.note << "N=20 exact for all five families";
}

void c3_abel(Outcome& o) {
  std::pair<Builtin, Rational> want[] = {
      {Builtin::laguerre, Rational(-2, 9)}, {Builtin::hermite, Rational(-2, 9)}, {Builtin::bell, Rational(-1, 4)}};
  for (auto& [b, k] : want) {
    auto d = abel_canonical(limits_of(b), sigma_of(b));
    if (!d.R_as_linear) o.fail(builtin_name(b) + ": R(x) not linear");
    else if (*d.R_as_linear != k) o.fail(builtin_name(b) + ": kappa = " + to_string(*d.R_as_linear));
    else o.note << builtin_name(b) << " R(x) = " << to_string(k) << " x; ";
  }
}

void c4_closed_laws(Outcome& o) {
  double worst = 0;
  for (Builtin b : {Builtin::jacobi, Builtin::laguerre, Builtin::hermite}) {
    LimitMeasure m = closed_form_cdf(b);
    // independent density formulas
    std::function<double(double)> pdf;
    if (b == Builtin::jacobi) pdf = [](double t) { return 1 / (kPi * std::sqrt(1 - t * t)); };
    if (b == Builtin::laguerre) pdf = [](double t) { return std::sqrt(4 - t) / (2 * kPi * std::sqrt(t)); };
    if (b == Builtin::hermite) pdf = [](double t) { return std::sqrt(2 - t * t) / kPi; };
    std::vector<double> ts;
    for (int i = 0; i < 50; ++i) ts.push_back(m.support_lo + (m.support_hi - m.support_lo) * (i + 0.5) / 50);
    auto inv = invert(closed_form_S(b), ts);
    for (int i = 0; i < 50; ++i) {
      double e = std::max(std::fabs(inv[i].pdf - m.pdf(ts[i])), std::fabs(pdf(ts[i]) - m.pdf(ts[i])));
      worst = std::max(worst, e);
      if (!(e <= 1e-5)) {
        o.fail(builtin_name(b) + ": mismatch at t=" + std::to_string(ts[i]));
        break;
      }
    }
  }
  o.note << (o.ok ? "" : "; ") << "max |difference| " << worst;
}

void c5_moments(Outcome& o) {
  double worst_b = 0, worst_e = 0;
  for (Builtin b : kAll) {
    auto mom = moments(closed_form_cdf(b), 8);
    SeriesTail c = b == Builtin::inverse_erf ? reduced_inverse_erf_coeffs(9) : series_coeffs(limits_of(b), sigma_of(b), 9);
    for (int k = 0; k <= 8; ++k) {
      double want = to_double(c.c(k + 1));
      if (b == Builtin::inverse_erf) {
        if (k % 2) continue;
        double e = std::fabs(mom[k] - want);
        worst_e = std::max(worst_e, e);
        if (!(e <= 1e-6)) o.fail("inverse_erf: m_" + std::to_string(k) + " = " + std::to_string(mom[k]));
      } else {
        double e = std::fabs(mom[k] - want);
        worst_b = std::max(worst_b, e);
        if (!(e <= 1e-8)) o.fail(builtin_name(b) + ": m_" + std::to_string(k) + " = " + std::to_string(mom[k]));
      }
    }
  }
  o.note << (o.ok ? "" : "; ") << "bounded max err " << worst_b << ", inverse_erf even max err " << worst_e;
}

Document compare(const std::string& family, int n) {
  RunConfig cfg;
  cfg.command = "compare";
  cfg.family = family;
  cfg.n = n;
  cfg.grid = 201;
  cfg.out = "-";
  return cmd_compare(cfg);
}

void c6_bell_compare(Outcome& o) {
  auto t0 = Clock::now();
  Document d = compare("bell", 75);
  double dt = seconds_since(t0);
  double ks = d.meta.at("ks").get<double>();
  if (d.table("steps").rows.size() != 75) o.fail("step curve has wrong length");
  if (d.table("limit").rows.empty()) o.fail("no limit curve");
  if (!(ks <= 0.05)) o.fail("KS too large");
  if (dt > 120) o.fail("over 2 minutes");
  o.note << (o.ok ? "" : "; ") << "KS(psi_75, psi) = " << ks << ", " << dt << " s";
}

void c7_erf_compare(Outcome& o) {
  Document d = compare("inverse_erf", 100);
  double ks = d.meta.at("ks").get<double>();
  if (!(ks <= 0.05)) o.fail("KS too large");
  LimitMeasure m = closed_form_cdf(Builtin::inverse_erf);
  double sym = 0;
  for (int i = 0; i <= 400; ++i) {
    double t = 4.0 * i / 400;
    sym = std::max(sym, std::fabs(m.cdf(t) + m.cdf(-t) - 1));
  }
  if (!(sym <= 1e-10)) o.fail("symmetry violated");
  double p0 = m.pdf(0), want = std::sqrt(2.0) / std::pow(kPi, 1.5);
  if (!(std::fabs(p0 - want) <= 1e-12)) o.fail("pdf(0) off");
  o.note << (o.ok ? "" : "; ") << "KS(psi_100, psi) = " << ks << ", max |psi(t)+psi(-t)-1| = " << sym
         << ", pdf(0) err " << std::fabs(p0 - want);
}

void c8_convergence(Outcome& o) {
  for (Builtin b : {Builtin::hermite, Builtin::laguerre, Builtin::bell}) {
    ZeroTracker tr(fam(b));
    LimitMeasure lim = closed_form_cdf(b);
    ScalingLaw sc = sigma_of(b);
    double ks[3];
    int ns[3] = {5, 20, 100};
    for (int i = 0; i < 3; ++i) {
      const ZeroStep& s = tr.advance_to(ns[i]);
      ks[i] = ks_distance(empirical_cdf(s.roots, ns[i], sc.phi(ns[i])), lim);
    }
    o.note << builtin_name(b) << " " << ks[0] << " > " << ks[1] << " > " << ks[2] << "; ";
    if (!(ks[2] < ks[1] && ks[1] < ks[0])) o.fail(builtin_name(b) + " not monotone; ");
  }
}

void c9_riccati(Outcome& o) {
  double worst = 0;
  auto pts = off_support_points(20);
  for (Builtin b : {Builtin::jacobi, Builtin::inverse_erf}) {
    auto S = riccati_solve(limits_of(b));
    auto C = closed_form_S(b);
    for (Complex z : pts) {
      double e = std::abs(S(z) - C(z));
      worst = std::max(worst, e);
      if (!(e <= 1e-8)) {
        o.fail(builtin_name(b) + ": mismatch; ");
        break;
      }
    }
  }
  o.note << "max |S_riccati - S_closed| = " << worst << " over 20 points each";
}

void c10_specfun(Outcome& o) {
  double worst = 0;
  for (int i = -40; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      Complex z(0.25 * i, 0.25 * j);
      Complex w = lambert_w0(z);
      double r = std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z));
      worst = std::max(worst, r);
    }
  if (!(worst <= 1e-12)) o.fail("W residual too large");
  double e1 = std::abs(lambert_w0(Complex(-std::exp(-1.0), 0)) - Complex(-1, 0));
  double e2 = std::abs(lambert_w0(Complex(std::numbers::e, 0)) - Complex(1, 0));
  double e3 = std::abs(lambert_w0(Complex(0, 0)));
  if (!(e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12)) o.fail("W special values");
  double wb = 0;
  for (Complex z : {Complex(10, 0), Complex(-5, 0), Complex(1, 1), Complex(-1, 0.5), Complex(0.3, -2),
                    Complex(-3, 0.01), Complex(50, -20), Complex(-2, 3), Complex(0.05, 0.05), Complex(-2.7, -0.2)})
    wb = std::max(wb, std::abs(bell_S_integral(z) - closed_form_S(Builtin::bell)(z)));
  if (!(wb <= 1e-9)) o.fail("bell integral disagrees");
  o.note << (o.ok ? "" : "; ") << "W residual " << worst << " on 81x81 grid, special values err " << std::max({e1, e2, e3})
         << ", integral vs Lambert " << wb;
}

void c11_ode(Outcome& o) {
  double worst = 0;
  auto pts = off_support_points(50);
  for (Builtin b : kAll) {
    auto S = closed_form_S(b);
    LimitPair lp = limits_of(b);
    ScalingLaw sc = sigma_of(b);
    for (Complex z : pts) {
      double r = std::abs(ode_residual(S, lp, sc, z));
      worst = std::max(worst, r);
      if (!(r <= 1e-5)) {
        o.fail(builtin_name(b) + ": residual too large; ");
        break;
      }
    }
  }
  o.note << "max residual " << worst << " over 50 points per family";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Outcome&);
  } crit[] = {
      {"interlacing", c1_interlacing},        {"series oracle", c2_series},
      {"canonical-form constants", c3_abel},  {"closed-form laws", c4_closed_laws},
      {"moment identity", c5_moments},        {"bell compare n=75", c6_bell_compare},
      {"inverse-erf compare n=100", c7_erf_compare},  {"convergence", c8_convergence},
      {"riccati solver", c9_riccati},         {"special functions", c10_specfun},
      {"ode residual", c11_ode},
  };
  int failed = 0, i = 0;
  for (auto& c : crit) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::printf("%s %2d %s: %s\n", o.ok ? "PASS" : "FAIL", ++i, c.name, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
