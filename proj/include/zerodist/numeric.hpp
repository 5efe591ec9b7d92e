#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace zerodist {

using Integer = mpz_class;
using Rational = mpq_class;
using HighFloat = boost::multiprecision::mpfr_float_50;
using Complex = std::complex<double>;

// digits of the working float; refinement defaults to 10^-(digits-8)
inline constexpr int kHighDigits = 50;
inline constexpr int kDefaultPrecision = kHighDigits - 8;

// accepts "p/q", "p", with optional sign; throws std::invalid_argument
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

HighFloat to_high(const Rational& q);
double to_double(const Rational& q);  // correctly rounded
Rational from_double(double x);       // exact

std::string format_double(double x);  // shortest round-trip
std::string format_high(const HighFloat& x, int digits);

}  // namespace zerodist
