#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zerodist/families.hpp"
#include "zerodist/numeric.hpp"

namespace zerodist {

struct ScalingLaw {
  Rational sigma;  // phi(n) = n^sigma
  HighFloat phi(long n) const;
};

struct SigmaChoice {
  ScalingLaw scaling;
  bool multiple_sigma = false;  // more than one sigma balances the degrees
};

struct LimitPair {
  Rational a2, a1, a0, b1, b0;

  Complex a(Complex z) const;
  Complex b(Complex z) const;
  Complex da(Complex z) const;
  Complex db() const;
};

struct SeriesTail {
  std::vector<Rational> coeffs;  // c_1 .. c_N
  const Rational& c(int n) const { return coeffs.at(n - 1); }
  int size() const { return static_cast<int>(coeffs.size()); }
};

LimitPair compute_limits(const FamilySpec& fam, const ScalingLaw& scaling);
SigmaChoice suggest_sigma(const FamilySpec& fam);

SeriesTail series_coeffs(const LimitPair& lp, const ScalingLaw& scaling, int N);
SeriesTail reduced_inverse_erf_coeffs(int N);
// Laurent coefficients of the closed-form transform, by formal power series
// (inverse_erf has no closed expansion; the reduced recurrence stands in).
SeriesTail closed_form_series(Builtin family, int N);

class StieltjesEvaluator {
 public:
  StieltjesEvaluator() = default;
  StieltjesEvaluator(std::function<Complex(Complex)> f, std::string label)
      : f_(std::move(f)), label_(std::move(label)) {}
  Complex operator()(Complex z) const { return f_(z); }
  const std::string& label() const { return label_; }
  explicit operator bool() const { return static_cast<bool>(f_); }

 private:
  std::function<Complex(Complex)> f_;
  std::string label_;
};

StieltjesEvaluator closed_form_S(Builtin family);
StieltjesEvaluator riccati_solve(const LimitPair& lp);
Complex bell_S_integral(Complex z);

class LimitMeasure {
 public:
  double support_lo = 0, support_hi = 0;
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  std::string source;
  std::optional<StieltjesEvaluator> S;

  // pdf given the distance d to the nearest finite support endpoint; lets
  // quadrature resolve endpoint singularities without cancellation
  std::function<double(double t, double d)> pdf_near;

  // smooth parameterization t(v), v in [v_lo, v_hi], used for moments when the
  // density is awkward in t
  struct Param {
    double v_lo, v_hi;
    std::function<double(double)> t, mass;  // mass = pdf(t(v)) t'(v)
  };
  std::optional<Param> param;

  bool symmetric = false;
  // for unbounded support: bound on the mass-weighted tail int_{|t|>T} |t|^k dpsi
  std::function<double(double T, int k)> tail_bound;

  bool bounded() const;
  // plotting window: the support, or [-T, T] with cdf(T) > 1 - eps
  std::pair<double, double> window(double eps = 1e-6) const;
};

LimitMeasure closed_form_cdf(Builtin family);
// pdf by Stieltjes-Perron inversion, cdf from a contour integral of S ending at t
LimitMeasure inverted_measure(const StieltjesEvaluator& S, double lo, double hi);

struct InversionPoint {
  double t, pdf, error;
};

std::vector<double> default_y_schedule();  // 1e-2 * 4^-j, j = 0..5
std::vector<InversionPoint> invert(const StieltjesEvaluator& S, const std::vector<double>& t_grid,
                                   const std::vector<double>& y_schedule = default_y_schedule());

std::vector<double> moments(const LimitMeasure& lm, int kmax);

// residual of (1-s)S - s z S' - (a'S + aS' + b')/(aS + b) with a central-difference S'
Complex ode_residual(const StieltjesEvaluator& S, const LimitPair& lp, const ScalingLaw& scaling, Complex z,
                     double h = 1e-6);

// ----------------------------------------------------------------- Abel data

// finite sum of c * z^p with rational c and p
class LaurentSum {
 public:
  LaurentSum() = default;
  static LaurentSum monomial(const Rational& c, const Rational& p);
  static LaurentSum from_poly(const std::vector<Rational>& coeffs);  // index = power

  const std::map<Rational, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  std::pair<Rational, Rational> single() const;  // (coefficient, power)

  LaurentSum derivative() const;
  LaurentSum integral() const;  // throws NonMonomialObstruction on a z^-1 term
  Complex operator()(Complex z) const;

  friend LaurentSum operator+(const LaurentSum& a, const LaurentSum& b);
  friend LaurentSum operator-(const LaurentSum& a, const LaurentSum& b);
  friend LaurentSum operator*(const LaurentSum& a, const LaurentSum& b);
  friend LaurentSum operator*(const Rational& s, const LaurentSum& a);
  friend bool operator==(const LaurentSum& a, const LaurentSum& b) { return a.t_ == b.t_; }
  // division by a monomial
  LaurentSum divided_by(const LaurentSum& m) const;

  std::string str(const std::string& var = "z") const;

 private:
  void add(const Rational& p, const Rational& c);
  std::map<Rational, Rational> t_;
};

struct AbelCanonicalData {
  LaurentSum g, f0, f1, f2, E;
  LaurentSum F0, F1;
  LaurentSum x_of_z;
  LaurentSum R;                        // R as a function of z
  std::optional<LaurentSum> R_of_x;    // R rewritten in x when exponents allow
  std::optional<Rational> R_as_linear; // kappa when R(x) = kappa x
};

AbelCanonicalData abel_canonical(const LimitPair& lp, const ScalingLaw& scaling);

// default parameters used when a builtin is requested without them (jacobi/laguerre: 0)
std::map<std::string, Rational> default_params(Builtin family);

}  // namespace zerodist
