#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zerodist/numeric.hpp"

namespace zerodist {

// Dense polynomial over Q, index = power of x. The zero polynomial has degree -1.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<Rational> coeffs);
  static ExactPoly constant(const Rational& c);
  static ExactPoly monomial(const Rational& c, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  ExactPoly derivative() const;
  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const Rational& s, const ExactPoly& a);
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.c_ == b.c_; }

  // quotient and remainder over Q; b must be nonzero
  static std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);
  static ExactPoly gcd(ExactPoly a, ExactPoly b);  // monic, or zero

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// p(n)/q(n) with exact rational coefficients in n
class RationalFnOfN {
 public:
  RationalFnOfN();  // the zero function
  RationalFnOfN(std::vector<Rational> num, std::vector<Rational> den);
  static RationalFnOfN constant(const Rational& c);

  const std::vector<Rational>& numerator() const { return num_; }
  const std::vector<Rational>& denominator() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  // deg num - deg den; meaningless for the zero function
  int degree_difference() const;
  Rational leading_ratio() const;

  Rational operator()(long n) const;  // throws DenominatorZeroAtN
  // true when the denominator has no integer root >= n0
  bool finite_from(long n0) const;

  friend bool operator==(const RationalFnOfN& a, const RationalFnOfN& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  std::vector<Rational> num_, den_;
};

struct FamilySpec {
  std::string name;
  std::array<RationalFnOfN, 3> alpha;  // A_n(x) = alpha[2] x^2 + alpha[1] x + alpha[0]
  std::array<RationalFnOfN, 2> beta;   // B_n(x) = beta[1] x + beta[0]
  std::map<std::string, Rational> params;
  long start_index = 0;

  // checks the finiteness invariant; throws BadParam
  void validate() const;
};

enum class Builtin { jacobi, laguerre, hermite, bell, inverse_erf };

std::optional<Builtin> builtin_id(const std::string& name);
std::string builtin_name(Builtin b);
const std::vector<std::string>& builtin_names();

FamilySpec builtin(const std::string& name, const std::map<std::string, Rational>& params = {});

ExactPoly next_poly(const ExactPoly& p, long n, const FamilySpec& fam);
std::vector<ExactPoly> generate(const FamilySpec& fam, int N);

}  // namespace zerodist
