#include <cmath>
#include <memory>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"

namespace zerodist {

namespace {

// S = -b/a + 1 / (a(z) K(z)),  K(z) = int_z^inf exp(-int_z^t b/a) / a(t) dt
// along a ray on which the integrand decays. This is the solution of the
// Riccati equation with z S(z) -> 1.
class Riccati {
 public:
  explicit Riccati(const LimitPair& lp)
      : a2_(to_double(lp.a2)), a1_(to_double(lp.a1)), a0_(to_double(lp.a0)),
        b1_(to_double(lp.b1)), b0_(to_double(lp.b0)) {
    if (lp.a2 != 0) {
      kind_ = Kind::quadratic;
      Rational disc = lp.a1 * lp.a1 - 4 * lp.a2 * lp.a0;
      Complex sq = std::sqrt(Complex(to_double(disc), 0.0));
      r1_ = (-a1_ + sq) / (2 * a2_);
      r2_ = (-a1_ - sq) / (2 * a2_);
      double_root_ = disc == 0;
      if (double_root_) r1_ = r2_ = -a1_ / (2 * a2_);
      if (!(b1_ / a2_ > -1))
        throw NormalizationFailure("no solution of the Riccati equation decays like 1/z (b1/a2 <= -1)");
      dirs_ = {Complex(0, 1), Complex(1, 0), Complex(-1, 0)};
    } else if (lp.a1 != 0) {
      kind_ = Kind::linear;
      r1_ = -a0_ / a1_;
      if (lp.b1 != 0) {
        dirs_ = {Complex(b1_ / a1_ > 0 ? 1.0 : -1.0, 0)};
      } else if (b0_ / a1_ > 0) {
        dirs_ = {Complex(0, 1), Complex(1, 0), Complex(-1, 0)};
      }
    } else if (lp.a0 != 0) {
      kind_ = Kind::constant;
      if (lp.b1 != 0) {
        if (b1_ / a0_ < 0)
          dirs_ = {Complex(0, 1)};
        else
          dirs_ = {Complex(1, 0), Complex(-1, 0)};
      } else if (lp.b0 != 0) {
        dirs_ = {Complex(b0_ / a0_ > 0 ? 1.0 : -1.0, 0)};
      }
    } else {
      throw BadParam("riccati_solve: a is identically zero");
    }
    if (dirs_.empty()) throw NormalizationFailure("no direction along which the Riccati integrand decays");
  }

  Complex operator()(Complex z) const {
    if (z.imag() < 0) return std::conj((*this)(std::conj(z)));
    if (z.imag() == 0) z.imag(0.0);
    Complex az = a(z), bz = b(z);
    if (az == 0.0) throw QuadratureFailure("riccati: evaluation at a zero of a");
    for (Complex d : dirs_) {
      if (!ray_clear(z, d)) continue;
      double ell = 1 / std::max(1.0, std::abs(bz / az));
      auto g = [&](double u) -> Complex {
        Complex t = z + d * (ell * u);
        Complex v = std::exp(-Phi(z, t)) / a(t);
        return std::isfinite(v.real()) && std::isfinite(v.imag()) ? v : Complex(0);
      };
      double err = 0, l1 = 0;
      Complex K;
      try {
        K = quad_.integrate(g, 1e-12, &err, &l1);
      } catch (const std::exception& e) {
        continue;
      }
      K *= d * ell;
      if (!(err <= 1e-9 * std::max(l1, 1e-300)) || K == 0.0) continue;
      return -bz / az + 1.0 / (az * K);
    }
    throw QuadratureFailure("riccati: no usable integration ray");
  }

 private:
  enum class Kind { quadratic, linear, constant };

  Complex a(Complex z) const { return (a2_ * z + a1_) * z + a0_; }
  Complex b(Complex z) const { return b1_ * z + b0_; }

  // the ray z + s d, s > 0, must not pass through a zero of a
  bool ray_clear(Complex z, Complex d) const {
    auto hits = [&](Complex r) {
      Complex c = (r - z) / d;
      return std::fabs(c.imag()) <= 1e-14 * std::abs(c) && c.real() >= 0;
    };
    if (kind_ == Kind::quadratic) return !hits(r1_) && !hits(r2_);
    if (kind_ == Kind::linear) return !hits(r1_);
    return true;
  }

  static Complex logratio(Complex t, Complex z, Complex r) { return std::log((t - r) / (z - r)); }

  // int_z^t b/a along the straight segment
  Complex Phi(Complex z, Complex t) const {
    switch (kind_) {
      case Kind::quadratic: {
        if (double_root_) {
          Complex r = r1_;
          return (b1_ / a2_) * logratio(t, z, r) - (b(r) / a2_) * (1.0 / (t - r) - 1.0 / (z - r));
        }
        Complex A = b(r1_) / (a2_ * (r1_ - r2_));
        Complex B = b(r2_) / (a2_ * (r2_ - r1_));
        return A * logratio(t, z, r1_) + B * logratio(t, z, r2_);
      }
      case Kind::linear:
        return (b1_ / a1_) * (t - z) + (b(r1_) / a1_) * logratio(t, z, r1_);
      case Kind::constant:
        return (b1_ / (2 * a0_)) * (t - z) * (t + z) + (b0_ / a0_) * (t - z);
    }
    return 0;
  }

  double a2_, a1_, a0_, b1_, b0_;
  Kind kind_ = Kind::constant;
  Complex r1_, r2_;
  bool double_root_ = false;
  std::vector<Complex> dirs_;
  mutable boost::math::quadrature::exp_sinh<double> quad_;
};

}  // namespace

StieltjesEvaluator riccati_solve(const LimitPair& lp) {
  auto solver = std::make_shared<const Riccati>(lp);
  StieltjesEvaluator S([solver](Complex z) { return (*solver)(z); }, "riccati");
  // boundary condition z S(z) -> 1
  Complex z(0, 1e3);
  Complex v = z * S(z);
  if (!(std::abs(v - 1.0) < 0.02))
    throw NormalizationFailure("z S(z) = " + std::to_string(v.real()) + (v.imag() < 0 ? "" : "+") +
                               std::to_string(v.imag()) + "i at z = 1000i");
  return S;
}

}  // namespace zerodist
