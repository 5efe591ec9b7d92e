#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zerodist/families.hpp"
#include "zerodist/numeric.hpp"

namespace zerodist {

struct RootEnclosure {
  Rational lo, hi;
  HighFloat value;  // midpoint
  Rational width() const { return hi - lo; }
  bool exact() const { return lo == hi; }

  static RootEnclosure make(Rational lo, Rational hi);
};

// Polynomial with integer coefficients and the same sign pattern as a given
// ExactPoly (positive scaling), used for exact sign evaluation.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(const ExactPoly& p);
  explicit IntPoly(std::vector<Integer> c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return c_; }
  int sign_at(const Rational& x) const;
  int sign_at_infinity(int direction) const;  // direction = +1 or -1
  IntPoly derivative() const;

 private:
  std::vector<Integer> c_;
};

class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& squarefree);
  int variations(const Rational& x) const;
  int variations_at_infinity(int direction) const;
  // number of distinct roots in (a, b]
  int count(const Rational& a, const Rational& b) const;
  int total() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

 private:
  std::vector<IntPoly> seq_;
};

struct IsolationReport {
  bool repeated_roots = false;  // p had a square factor; roots reported once
  int real_root_count = 0;      // distinct real roots (Sturm)
};

bool is_squarefree(const ExactPoly& p);
ExactPoly squarefree_part(const ExactPoly& p);
int sturm_real_root_count(const ExactPoly& p);

std::vector<RootEnclosure> isolate_roots(const ExactPoly& p, IsolationReport* report = nullptr);

// width <= tol by exact-sign bisection
RootEnclosure refine(const RootEnclosure& e, const ExactPoly& p, double tol);
RootEnclosure refine(const RootEnclosure& e, const IntPoly& p, const Rational& tol);
// width <= 2^-bits * min(|lo|, |hi|), never straddling 0 unless exact
RootEnclosure refine_relative(const RootEnclosure& e, const IntPoly& p, int bits);

// Decides x_{k,n} <= x_{k,n-1} <= x_{k+1,n} on the given enclosures.
// Throws InsufficientSeparation when an ordering cannot be decided.
bool check_interlacing(const std::vector<RootEnclosure>& roots_lo, const std::vector<RootEnclosure>& roots_hi);
// Same, refining overlapping enclosures (in place) up to `budget` bisections each.
bool check_interlacing(const ExactPoly& p_lo, std::vector<RootEnclosure>& roots_lo, const ExactPoly& p_hi,
                       std::vector<RootEnclosure>& roots_hi, int budget = 400);

struct ZeroStep {
  int n = 0;
  ExactPoly poly;
  std::vector<RootEnclosure> roots;
  bool all_real = true;                     // certified count == degree
  std::optional<bool> interlaces_previous;  // empty for n = 0
  bool sturm_fallback = false;
};

// Walks P_0, P_1, ... using the zeros of P_n to bracket those of P_{n+1}.
class ZeroTracker {
 public:
  explicit ZeroTracker(FamilySpec fam, int work_bits = 50);
  const ZeroStep& current() const { return cur_; }
  const ZeroStep& advance();
  const ZeroStep& advance_to(int n);
  const FamilySpec& family() const { return fam_; }

 private:
  std::optional<std::vector<RootEnclosure>> bracket(const ExactPoly& next, const IntPoly& ip, double eps_scale) const;
  FamilySpec fam_;
  int bits_;
  ZeroStep cur_;
};

class LimitMeasure;

struct StepMeasure {
  std::vector<HighFloat> scaled_zeros;
  std::vector<double> zeros;  // the same, rounded to double
  int n = 0;
  HighFloat phi_value = 1;

  double cdf(double t) const;       // right-continuous
  double cdf_left(double t) const;  // lim from the left
};

StepMeasure empirical_cdf(const std::vector<RootEnclosure>& roots, int n, const HighFloat& phi);
double ks_distance(const StepMeasure& emp, const LimitMeasure& lim);

}  // namespace zerodist
