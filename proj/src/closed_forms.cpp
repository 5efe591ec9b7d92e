#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"
#include "zerodist/specfun.hpp"

namespace zerodist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kSqrt2 = std::sqrt(2.0);

Complex reflect(Complex z, Complex (*upper_fn)(Complex)) {
  if (z.imag() < 0) return std::conj(upper_fn(std::conj(z)));
  if (z.imag() == 0) z.imag(0.0);
  return upper_fn(z);
}

Complex bell_upper(Complex z) {
  if (z == Complex(0, 0)) throw EvaluationFailure("bell S at z = 0");
  if (z.imag() == 0) {
    double t = z.real();
    // on the support the upper limit of S is conj(S evaluated from 1/t + i0)
    if (t > -kE && t < 0) return std::conj(cexpm1(lambert_w0(Complex(1 / t, 0.0))));
    return cexpm1(lambert_w0(Complex(1 / t, 0.0)));
  }
  return cexpm1(lambert_w0(1.0 / z));
}

Complex inverse_erf_upper(Complex z) {
  if (z.imag() == 0) {
    double t = z.real();
    double D = dawson(t / kSqrt2), E = std::exp(-t * t / 2);
    Complex num(2 / std::sqrt(kPi) * D, E);
    double den = 4 / kPi * D * D + E * E;
    return t - std::sqrt(2 / kPi) * num / den;
  }
  Complex zeta = z / kSqrt2;
  if (std::abs(zeta) > 8 && zeta.imag() >= 2) return kSqrt2 * faddeeva_cf_tail(zeta);
  return z - Complex(0, std::sqrt(2 / kPi)) / faddeeva(zeta);
}

}  // namespace

StieltjesEvaluator closed_form_S(Builtin family) {
  switch (family) {
    case Builtin::jacobi:
      return {[](Complex z) { return 1.0 / principal_sqrt_offcut(z, -1, 1); }, "closed_form(jacobi)"};
    case Builtin::laguerre:
      return {[](Complex z) { return 2.0 / (z + principal_sqrt_offcut(z, 0, 4)); }, "closed_form(laguerre)"};
    case Builtin::hermite:
      return {[](Complex z) { return 2.0 / (z + principal_sqrt_offcut(z, -kSqrt2, kSqrt2)); },
              "closed_form(hermite)"};
    case Builtin::bell:
      return {[](Complex z) { return reflect(z, bell_upper); }, "closed_form(bell)"};
    case Builtin::inverse_erf:
      return {[](Complex z) { return reflect(z, inverse_erf_upper); }, "closed_form(inverse_erf)"};
  }
  throw UnknownFamily("closed_form_S");
}

Complex bell_S_integral(Complex z) {
  auto f = [z](double v) -> Complex {
    double s = std::sin(v), c = std::cos(v);
    double num = v * v * s * s + (s - v * c) * (s - v * c);
    double w = (s / v) * std::exp(v * c / s);
    return num / (v * v * (z + w));
  };
  double err = 0;
  Complex r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, kPi, 20, 1e-13, &err);
  if (!(err <= 1e-9 * std::max(1.0, std::abs(r)))) throw QuadratureFailure("bell integral representation");
  return r / kPi;
}

// ------------------------------------------------------------ limit measures

bool LimitMeasure::bounded() const { return std::isfinite(support_lo) && std::isfinite(support_hi); }

std::pair<double, double> LimitMeasure::window(double eps) const {
  if (bounded()) return {support_lo, support_hi};
  double T = 1;
  while (T < 1e3 && (cdf(T) <= 1 - eps || cdf(-T) >= eps)) T += 0.25;
  return {std::isfinite(support_lo) ? support_lo : -T, std::isfinite(support_hi) ? support_hi : T};
}

LimitMeasure closed_form_cdf(Builtin family) {
  LimitMeasure m;
  m.S = closed_form_S(family);
  m.source = "closed_form(" + builtin_name(family) + ")";
  switch (family) {
    case Builtin::jacobi:
      m.support_lo = -1;
      m.support_hi = 1;
      m.symmetric = true;
      m.cdf = [](double t) {
        if (t <= -1) return 0.0;
        if (t >= 1) return 1.0;
        return 0.5 + std::asin(t) / kPi;
      };
      m.pdf_near = [](double t, double d) {
        if (std::fabs(t) > 1) return 0.0;
        return 1 / (kPi * std::sqrt(d * (2 - d)));
      };
      m.pdf = [](double t) {
        if (std::fabs(t) > 1) return 0.0;
        return 1 / (kPi * std::sqrt((1 - t) * (1 + t)));
      };
      break;
    case Builtin::laguerre:
      m.support_lo = 0;
      m.support_hi = 4;
      m.cdf = [](double t) {
        if (t <= 0) return 0.0;
        if (t >= 4) return 1.0;
        return 2 / kPi * std::asin(std::sqrt(t) / 2) + std::sqrt(t * (4 - t)) / (2 * kPi);
      };
      m.pdf = [](double t) {
        if (t < 0 || t > 4) return 0.0;
        return std::sqrt(4 - t) / (2 * kPi * std::sqrt(t));
      };
      m.pdf_near = [](double t, double d) {
        if (t < 0 || t > 4) return 0.0;
        return t < 2 ? std::sqrt(4 - d) / (2 * kPi * std::sqrt(d)) : std::sqrt(d) / (2 * kPi * std::sqrt(4 - d));
      };
      break;
    case Builtin::hermite:
      m.support_lo = -kSqrt2;
      m.support_hi = kSqrt2;
      m.symmetric = true;
      m.cdf = [](double t) {
        if (t <= -kSqrt2) return 0.0;
        if (t >= kSqrt2) return 1.0;
        return 0.5 + (std::asin(t / kSqrt2) + t * std::sqrt(2 - t * t) / 2) / kPi;
      };
      m.pdf = [](double t) {
        double a = std::fabs(t);
        if (a >= kSqrt2) return 0.0;
        return std::sqrt((kSqrt2 - a) * (kSqrt2 + a)) / kPi;
      };
      m.pdf_near = [](double t, double d) {
        if (std::fabs(t) > kSqrt2) return 0.0;
        return std::sqrt(d * (2 * kSqrt2 - d)) / kPi;
      };
      break;
    case Builtin::bell: {
      m.support_lo = -kE;
      m.support_hi = 0;
      m.cdf = [](double t) {
        if (t <= -kE) return 0.0;
        if (t >= 0 || !std::isfinite(1 / t)) return 1.0;
        Complex W = lambert_w0(Complex(1 / t, 0.0));
        return 1 + ((1.0 / W).imag() - std::arg(W)) / kPi;
      };
      auto pdf = [](double t) {
        if (t <= -kE || t >= 0) return 0.0;
        double u = 1 / t;
        if (!std::isfinite(u)) return 0.0;
        Complex W = lambert_w0(Complex(u, 0.0));
        return (u / W).imag() / kPi;
      };
      m.pdf = pdf;
      // on t(v), W(1/t) = -v cot v + iv, so pdf dt collapses to a smooth weight
      m.param = LimitMeasure::Param{
          0.0, kPi,
          [](double v) { return v == 0 ? -kE : -(std::sin(v) / v) * std::exp(v * std::cos(v) / std::sin(v)); },
          [](double v) {
            if (v == 0) return 0.0;
            double s = std::sin(v);
            return (1 - std::sin(2 * v) / v + s * s / (v * v)) / kPi;
          }};
      break;
    }
    case Builtin::inverse_erf:
      m.support_lo = -INFINITY;
      m.support_hi = INFINITY;
      m.symmetric = true;
      m.cdf = [](double t) {
        if (t == 0) return 0.5;
        double D = std::fabs(dawson(t / kSqrt2));
        double tail = std::atan(std::sqrt(kPi) * std::exp(-t * t / 2) / (2 * D)) / kPi;
        return t > 0 ? 1 - tail : tail;
      };
      m.pdf = [](double t) {
        double D = dawson(t / kSqrt2);
        return std::sqrt(2 / kPi) * std::exp(-t * t / 2) / (4 * D * D + kPi * std::exp(-t * t));
      };
      // pdf <= sqrt(2/pi) (t^2/2) exp(-t^2/2) once daw(x) >= 1/(2x), i.e. |t| >= sqrt(2)
      m.tail_bound = [](double T, int k) {
        if (T < kSqrt2) return std::numeric_limits<double>::infinity();
        return 2 / std::sqrt(2 * kPi) * std::pow(2.0, (k + 1) / 2.0) *
               boost::math::tgamma((k + 3) / 2.0, T * T / 2);
      };
      break;
  }
  return m;
}

}  // namespace zerodist
