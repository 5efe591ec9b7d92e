#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"

namespace zerodist {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> default_y_schedule() {
  std::vector<double> y;
  for (int j = 0; j < 6; ++j) y.push_back(1e-2 * std::pow(4.0, -j));
  return y;
}

std::vector<InversionPoint> invert(const StieltjesEvaluator& S, const std::vector<double>& t_grid,
                                   const std::vector<double>& ys) {
  if (ys.size() < 2) throw std::invalid_argument("invert: need at least two y levels");
  for (std::size_t j = 0; j < ys.size(); ++j)
    if (!(ys[j] > 0) || (j > 0 && !(ys[j] < ys[j - 1])))
      throw std::invalid_argument("invert: y schedule must be positive and strictly decreasing");
  std::vector<InversionPoint> out;
  out.reserve(t_grid.size());
  const std::size_t m = ys.size();
  for (double t : t_grid) {
    // Neville table for the value at y = 0
    std::vector<std::vector<double>> T(m);
    for (std::size_t j = 0; j < m; ++j) {
      T[j].resize(j + 1);
      T[j][0] = -S(Complex(t, ys[j])).imag() / kPi;
      for (std::size_t k = 1; k <= j; ++k)
        T[j][k] = (ys[j] * T[j - 1][k - 1] - ys[j - k] * T[j][k - 1]) / (ys[j] - ys[j - k]);
    }
    double best = T[m - 1][m - 1];
    double err = std::fabs(best - T[m - 2][m - 2]);
    if (!std::isfinite(best) || err > 1e-4 * std::max(1.0, std::fabs(best))) throw ExtrapolationDiverged(t);
    out.push_back({t, best, err});
  }
  return out;
}

LimitMeasure inverted_measure(const StieltjesEvaluator& S, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("inverted_measure: need a finite window");
  LimitMeasure m;
  m.support_lo = lo;
  m.support_hi = hi;
  m.S = S;
  m.source = "inverted(" + S.label() + ")";
  m.pdf = [S, lo, hi](double t) {
    if (t <= lo || t >= hi) return 0.0;
    // S continues analytically across the support only up to the nearest edge
    double y0 = std::min(1e-2, std::min(t - lo, hi - t) / 8);
    std::vector<double> ys;
    for (int j = 0; j < 6; ++j) ys.push_back(y0 * std::pow(4.0, -j));
    return std::max(invert(S, {t}, ys).front().pdf, 0.0);
  };
  // psi(t) = -(1/pi) Im int S(s + i0) ds from the left of the window, taken along
  // P -> P + ih -> t + ih -> t where S is smooth
  const double h = std::max(1.0, (hi - lo) / 2), P = lo - (hi - lo) / 2;
  auto gk = [](auto f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-12);
  };
  const double left = gk([S, P](double y) { return S(Complex(P, y)).real(); }, 0.0, h);
  m.cdf = [S, lo, hi, h, P, left, gk](double t) {
    if (t <= lo) return 0.0;
    if (t >= hi) return 1.0;
    // Im of i*int S dy is the real part; the descent runs from h to 0
    double across = gk([S, h](double x) { return S(Complex(x, h)).imag(); }, P, t);
    boost::math::quadrature::tanh_sinh<double> ts;
    double down = ts.integrate([S, t](double y) { return S(Complex(t, y)).real(); }, 0.0, h, 1e-12);
    double v = -(left + across - down) / kPi;
    return std::clamp(v, 0.0, 1.0);
  };
  return m;
}

std::vector<double> moments(const LimitMeasure& lm, int kmax) {
  if (kmax < 0) throw std::invalid_argument("moments: kmax must be nonnegative");
  std::vector<double> mu(kmax + 1);
  if (lm.param) {
    const auto& p = *lm.param;
    for (int k = 0; k <= kmax; ++k) {
      auto f = [&](double v) {
        return std::pow(p.t(v), k) * p.mass(v);
      };
      double err = 0;
      mu[k] = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, p.v_lo, p.v_hi, 25, 1e-13, &err);
      if (!(err <= 1e-9)) throw QuadratureFailure("moment " + std::to_string(k) + " over the parameterization");
    }
    return mu;
  }
  if (lm.bounded()) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double lo = lm.support_lo, hi = lm.support_hi;
    for (int k = 0; k <= kmax; ++k) {
      auto f = [&](double t, double tc) {
        double d = std::fabs(tc);
        double dens = lm.pdf_near ? lm.pdf_near(t, d) : lm.pdf(t);
        return std::pow(t, k) * dens;
      };
      double err = 0, l1 = 0;
      mu[k] = ts.integrate(f, lo, hi, 1e-14, &err, &l1);
      if (!(err <= 1e-9 * std::max(1.0, l1))) throw QuadratureFailure("moment " + std::to_string(k));
    }
    return mu;
  }
  // unbounded: truncate where the tail bound drops below 1e-12
  if (!lm.tail_bound || !lm.symmetric)
    throw QuadratureFailure("moments of an unbounded measure need a symmetric law with a tail bound");
  for (int k = 0; k <= kmax; ++k) {
    if (k % 2 == 1) {
      mu[k] = 0;  // symmetric law
      continue;
    }
    double T = 2;
    while (lm.tail_bound(T, k) > 1e-12) T += 0.25;
    auto f = [&](double t) { return std::pow(t, k) * lm.pdf(t); };
    double err = 0;
    mu[k] = 2 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, T, 20, 1e-14, &err);
    if (!(err <= 1e-10 * std::max(1.0, std::fabs(mu[k])))) throw QuadratureFailure("moment " + std::to_string(k));
  }
  return mu;
}

Complex ode_residual(const StieltjesEvaluator& S, const LimitPair& lp, const ScalingLaw& scaling, Complex z,
                     double h) {
  const double s = to_double(scaling.sigma);
  Complex v = S(z);
  Complex dv = (S(z + h) - S(z - h)) / (2 * h);
  Complex lhs = (1 - s) * v - s * z * dv;
  Complex rhs = (lp.da(z) * v + lp.a(z) * dv + lp.db()) / (lp.a(z) * v + lp.b(z));
  return lhs - rhs;
}

}  // namespace zerodist
