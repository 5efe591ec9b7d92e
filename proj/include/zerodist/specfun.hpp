#pragma once

#include "zerodist/numeric.hpp"

namespace zerodist {

// Principal branch. Arguments on the cut (-inf, -1/e] with zero imaginary part
// (of either sign) return the limit from the upper half-plane.
Complex lambert_w0(Complex z);

// daw(x) = exp(-x^2) * integral_0^x exp(t^2) dt
double dawson(double x);

// sqrt(z - lo) * sqrt(z - hi): analytic off [lo, hi], ~ z at infinity,
// upper-limit values on the segment itself.
Complex principal_sqrt_offcut(Complex z, double cut_lo, double cut_hi);

// Faddeeva w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
Complex faddeeva(Complex z);

// Tail T(z) of the Laplace continued fraction for w:
// w(z) = (i/sqrt(pi)) / (z - T(z)),  T(z) = (1/2)/(z - 1/(z - (3/2)/(z - ...))).
// Usable for |z| large with Im z >= 0.
Complex faddeeva_cf_tail(Complex z);

// exp(w) - 1 without cancellation for small |w|
Complex cexpm1(Complex w);

}  // namespace zerodist
