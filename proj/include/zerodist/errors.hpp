#pragma once

#include <stdexcept>
#include <string>

namespace zerodist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZERODIST_ERROR(Name)                   \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

ZERODIST_ERROR(UnknownFamily);
ZERODIST_ERROR(BadParam);
ZERODIST_ERROR(InsufficientSeparation);
ZERODIST_ERROR(NoValidSigma);
ZERODIST_ERROR(QuadratureFailure);
ZERODIST_ERROR(NormalizationFailure);
ZERODIST_ERROR(NonMonomialObstruction);
ZERODIST_ERROR(EvaluationFailure);
ZERODIST_ERROR(NoConvergence);

#undef ZERODIST_ERROR

class DenominatorZeroAtN : public Error {
 public:
  explicit DenominatorZeroAtN(long n)
      : Error("DenominatorZeroAtN: coefficient rule has a vanishing denominator at n=" +
              std::to_string(n)),
        n_(n) {}
  long n() const { return n_; }

 private:
  long n_;
};

class DivergentLimit : public Error {
 public:
  DivergentLimit(int j, char which)
      : Error(std::string("DivergentLimit: ") + which + std::to_string(j) +
              " grows without bound for this sigma"),
        j_(j), which_(which) {}
  int j() const { return j_; }
  char which() const { return which_; }

 private:
  int j_;
  char which_;
};

class SeriesObstruction : public Error {
 public:
  explicit SeriesObstruction(long n)
      : Error("SeriesObstruction: recurrence bracket vanishes at n=" + std::to_string(n)),
        n_(n) {}
  long n() const { return n_; }

 private:
  long n_;
};

class ExtrapolationDiverged : public Error {
 public:
  explicit ExtrapolationDiverged(double t)
      : Error("ExtrapolationDiverged: y->0 estimates do not settle at t=" + std::to_string(t)),
        t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

}  // namespace zerodist
