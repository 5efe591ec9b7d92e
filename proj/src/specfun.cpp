#include "zerodist/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "zerodist/errors.hpp"

namespace zerodist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kELo = 1.4456468917292502e-16;  // e - kE
constexpr double kEps = 2.220446049250313e-16;

Complex upper(Complex z) {
  if (z.imag() == 0.0) z.imag(0.0);  // turns -0 into +0
  return z;
}

// sum_k (2k-1)!! / (2 z^2)^k / (2z), truncated at the smallest term
Complex dawson_asymptotic(Complex z) {
  Complex inv2 = 1.0 / (2.0 * z * z);
  Complex term = 1.0 / (2.0 * z), s = term;
  double prev = std::abs(term);
  for (int k = 1; k < 400; ++k) {
    Complex next = term * double(2 * k - 1) * inv2;
    double m = std::abs(next);
    if (m > prev) break;
    s += next;
    term = next;
    prev = m;
    if (m < 1e-18 * std::abs(s)) break;
  }
  return s;
}

// starting points, best first
std::vector<Complex> w_seeds(Complex z, Complex q) {
  std::vector<Complex> out;
  double az = std::abs(z);
  if (az < 0.5 / kE) {
    // (-n)^(n-1) z^n / n!
    Complex s = 0, zn = 1;
    double fact = 1;
    for (int n = 1; n <= 10; ++n) {
      zn *= z;
      fact *= n;
      s += std::pow(-double(n), n - 1) / fact * zn;
    }
    out.push_back(s);
  }
  if (std::abs(q) < 0.5) {
    // expansion about the branch point in p = sqrt(2(ez+1))
    Complex p = std::sqrt(2.0 * q);
    out.push_back(-1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540)))));
  }
  if (az > 3) {
    Complex l1 = std::log(z), l2 = std::log(l1);
    out.push_back(l1 - l2 + l2 / l1);
  }
  Complex l = std::log(1.0 + z);
  out.push_back(l * (1.0 - std::log(1.0 + l) / (2.0 + l)));
  out.push_back(l);
  out.push_back(Complex(0.5, 1.0));
  return out;
}

// range of the principal branch: |Im w| < pi, right of -y cot y + iy
bool principal(Complex w, Complex z) {
  // W0 maps each open half plane into itself
  if (z.imag() != 0 && w.imag() * z.imag() <= 0) return false;
  double y = std::fabs(w.imag());
  if (y == 0) return w.real() >= -1 - 1e-8;
  if (y >= kPi) return false;
  // arguments on the cut map onto the boundary curve itself
  return w.real() > -y / std::tan(y) - 1e-6 * (1 + std::abs(w));
}

std::optional<Complex> halley(Complex z, Complex w) {
  double last = INFINITY;
  for (int it = 0; it < 50; ++it) {
    Complex ew = std::exp(w);
    Complex f = w * ew - z;
    Complex wp1 = w + 1.0;
    Complex dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    if (!std::isfinite(dw.real()) || !std::isfinite(dw.imag())) return std::nullopt;
    w -= dw;
    double a = std::abs(dw), scale = std::max(1.0, std::abs(w));
    if (a <= 4 * kEps * scale) return w;
    // near the branch point rounding can leave a 2-cycle a few ulps wide
    if (a < 1e-10 * scale && a >= 0.5 * last) return w;
    last = a;
  }
  return std::nullopt;
}

}  // namespace

Complex lambert_w0(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NoConvergence("lambert_w0: non-finite argument");
  z = upper(z);
  if (z == Complex(0, 0)) return 0;
  // e*z + 1 with the rounding error of e folded back in
  Complex q(std::fma(kE, z.real(), 1.0) + kELo * z.real(), kE * z.imag() + kELo * z.imag());
  q = upper(q);
  // within an ulp of -1/e: the input cannot resolve the branch point, snap to it
  if (std::abs(q) <= kEps) return -1;
  if (std::abs(q) < 5e-3) {
    // |p| < 0.1: the branch-point series beats Halley, whose residual cancels badly here
    static const double mu[] = {-1.0, 1.0, -1.0 / 3, 11.0 / 72, -43.0 / 540, 769.0 / 17280, -221.0 / 8505,
                                680863.0 / 43545600, -0.009616892024299431707, 0.006014543252956117861,
                                -0.003811298034891999227, 0.002440877991143982666, -0.001576930344686784254};
    Complex p = std::sqrt(2.0 * q), w = 0;
    for (int k = 12; k >= 0; --k) w = w * p + mu[k];
    if (z.imag() == 0.0 && q.real() >= 0) w.imag(0.0);
    return w;
  }
  for (Complex seed : w_seeds(z, q)) {
    auto r = halley(z, seed);
    if (!r) continue;
    Complex w = *r;
    // clamp to the upper side for arguments sitting on the cut
    if (z.imag() == 0.0 && q.real() < 0 && w.imag() < 0) w = std::conj(w);
    if (z.imag() == 0.0 && q.real() >= 0) w.imag(0.0);
    if (principal(w, z)) return w;
  }
  throw NoConvergence("lambert_w0: Halley iteration found no principal-branch root");
}

double dawson(double x) {
  if (x == 0) return x;
  double ax = std::fabs(x);
  double r;
  if (ax <= 4) {
    // exp(-x^2) * sum x^(2n+1) / (n! (2n+1)), all terms positive
    double x2 = ax * ax, t = ax, s = 0;
    for (int n = 0; n < 400; ++n) {
      double term = t / (2 * n + 1);
      s += term;
      if (term < 1e-17 * s) break;
      t *= x2 / (n + 1);
    }
    r = std::exp(-x2) * s;
  } else if (ax <= 10) {
    // Rybicki: daw(x) ~ pi^(-1/2) sum_{n odd} exp(-(x - n h)^2) / n, error ~ exp(-(pi/2h)^2)
    const double h = 0.2;
    long nc = std::lround(ax / h);
    double s = 0;
    for (long n = nc - 45; n <= nc + 45; ++n) {
      if ((n & 1) == 0) continue;
      double d = ax - n * h;
      s += std::exp(-d * d) / n;
    }
    r = s / std::sqrt(kPi);
  } else {
    r = dawson_asymptotic(Complex(ax, 0)).real();
  }
  return x < 0 ? -r : r;
}

Complex principal_sqrt_offcut(Complex z, double cut_lo, double cut_hi) {
  z = upper(z);
  return std::sqrt(upper(z - cut_lo)) * std::sqrt(upper(z - cut_hi));
}

Complex faddeeva_cf_tail(Complex z) {
  // modified Lentz for a1/(z + a2/(z + a3/(z + ...))), a1 = 1/2, a_k = -k/2
  const double tiny = 1e-300;
  Complex f = tiny, C = f, D = 0;
  for (int k = 1; k < 20000; ++k) {
    double a = k == 1 ? 0.5 : -0.5 * k;
    D = z + a * D;
    if (std::abs(D) < tiny) D = tiny;
    C = z + a / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    Complex delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw NoConvergence("Faddeeva continued fraction did not converge");
}

namespace {

constexpr int kWN = 40;

struct Weideman {
  double L;
  std::array<double, kWN + 1> a{};  // a[1..N]
  Weideman() {
    const int M = 2 * kWN;
    L = std::sqrt(kWN / std::sqrt(2.0));
    for (int n = 1; n <= kWN; ++n) {
      double s = 0;
      for (int k = -M + 1; k <= M - 1; ++k) {
        double th = k * kPi / M;
        double t = L * std::tan(th / 2);
        s += std::exp(-t * t) * (L * L + t * t) * std::cos(n * th);
      }
      a[n] = s / (2 * M);
    }
  }
};

}  // namespace

Complex faddeeva(Complex z) {
  if (z.imag() < 0) throw EvaluationFailure("faddeeva: only the closed upper half-plane is supported");
  // real axis: both parts are known separately, keeps the tiny real part relative-accurate
  if (z.imag() == 0) return {std::exp(-z.real() * z.real()), 2 / std::sqrt(kPi) * dawson(z.real())};
  if (std::abs(z) > 8) {
    if (z.imag() >= 2) return Complex(0, 1 / std::sqrt(kPi)) / (z - faddeeva_cf_tail(z));
    // near the real axis: w = exp(-z^2) + (2i/sqrt(pi)) daw(z)
    return std::exp(-z * z) + Complex(0, 2 / std::sqrt(kPi)) * dawson_asymptotic(z);
  }
  static const Weideman W;
  const Complex I(0, 1);
  Complex lz = W.L - I * z;
  Complex Z = (W.L + I * z) / lz;
  Complex p = 0;
  for (int n = kWN; n >= 1; --n) p = p * Z + W.a[n];
  return 2.0 * p / (lz * lz) + (1 / std::sqrt(kPi)) / lz;
}

Complex cexpm1(Complex w) {
  double a = w.real(), b = w.imag();
  double sh = std::sin(b / 2);
  return {std::expm1(a) * std::cos(b) - 2 * sh * sh, std::exp(a) * std::sin(b)};
}

}  // namespace zerodist
