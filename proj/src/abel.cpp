#include <sstream>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"

namespace zerodist {

LaurentSum LaurentSum::monomial(const Rational& c, const Rational& p) {
  LaurentSum s;
  s.add(p, c);
  return s;
}

LaurentSum LaurentSum::from_poly(const std::vector<Rational>& coeffs) {
  LaurentSum s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s.add(Rational(static_cast<long>(i)), coeffs[i]);
  return s;
}

void LaurentSum::add(const Rational& p, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

std::pair<Rational, Rational> LaurentSum::single() const {
  if (!is_monomial()) throw NonMonomialObstruction("expected a single term, got " + str());
  return {t_.begin()->second, t_.begin()->first};
}

LaurentSum LaurentSum::derivative() const {
  LaurentSum r;
  for (const auto& [p, c] : t_) r.add(p - 1, c * p);
  return r;
}

LaurentSum LaurentSum::integral() const {
  LaurentSum r;
  for (const auto& [p, c] : t_) {
    if (p == -1) throw NonMonomialObstruction("integral of " + str() + " has a logarithm");
    r.add(p + 1, c / (p + 1));
  }
  return r;
}

Complex LaurentSum::operator()(Complex z) const {
  Complex s = 0;
  for (const auto& [p, c] : t_) {
    Complex zp = p.get_den() == 1 ? std::pow(z, static_cast<int>(p.get_num().get_si()))
                                  : std::exp(to_double(p) * std::log(z));
    s += to_double(c) * zp;
  }
  return s;
}

LaurentSum operator+(const LaurentSum& a, const LaurentSum& b) {
  LaurentSum r = a;
  for (const auto& [p, c] : b.t_) r.add(p, c);
  return r;
}

LaurentSum operator-(const LaurentSum& a, const LaurentSum& b) {
  LaurentSum r = a;
  for (const auto& [p, c] : b.t_) r.add(p, -c);
  return r;
}

LaurentSum operator*(const LaurentSum& a, const LaurentSum& b) {
  LaurentSum r;
  for (const auto& [p, c] : a.t_)
    for (const auto& [q, d] : b.t_) r.add(p + q, c * d);
  return r;
}

LaurentSum operator*(const Rational& s, const LaurentSum& a) {
  LaurentSum r;
  for (const auto& [p, c] : a.t_) r.add(p, s * c);
  return r;
}

LaurentSum LaurentSum::divided_by(const LaurentSum& m) const {
  if (m.is_zero()) throw NonMonomialObstruction("division by zero");
  if (!m.is_monomial()) throw NonMonomialObstruction("division by the non-monomial " + m.str());
  auto [c, p] = m.single();
  LaurentSum r;
  for (const auto& [q, d] : t_) r.add(q - p, d / c);
  return r;
}

std::string LaurentSum::str(const std::string& var) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [p, c] = *it;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    Rational ac = abs(c);
    if (p == 0) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << var;
      if (p != 1) os << "^" << (p.get_den() == 1 ? p.get_str() : "(" + p.get_str() + ")");
    }
    first = false;
  }
  return os.str();
}

AbelCanonicalData abel_canonical(const LimitPair& lp, const ScalingLaw& scaling) {
  const Rational& s = scaling.sigma;
  if (s <= 0) throw BadParam("abel_canonical needs sigma > 0");
  LaurentSum a = LaurentSum::from_poly({lp.a0, lp.a1, lp.a2});
  LaurentSum b = LaurentSum::from_poly({lp.b0, lp.b1});
  LaurentSum z = LaurentSum::monomial(1, 1);
  LaurentSum one = LaurentSum::monomial(1, 0);
  LaurentSum sza = s * (z * a);
  if (!sza.is_monomial()) throw NonMonomialObstruction("a(z) = " + a.str() + " is not a single term");

  AbelCanonicalData d;
  d.g = (a + s * (z * b)).divided_by(sza);
  d.f0 = (Rational(-1) * b.derivative()).divided_by(sza);
  d.f1 = ((1 - s) * b - a.derivative()).divided_by(sza);
  d.f2 = ((1 - s) * one).divided_by(s * z);
  d.E = LaurentSum::monomial(1, 1 - 1 / s);
  d.F0 = (d.f0 - d.f1 * d.g + d.f2 * d.g * d.g) * d.E * d.E;
  d.F1 = (d.f1 - Rational(2) * d.f2 * d.g + d.g.derivative()) * d.E;
  d.x_of_z = d.F1.integral();
  if (d.F1.is_zero()) throw NonMonomialObstruction("F1 vanishes identically");
  d.R = d.F0.divided_by(d.F1);

  // rewrite R in x when x = k z^q and each exponent of R is an integer multiple of q
  if (d.x_of_z.is_monomial()) {
    auto [k, q] = d.x_of_z.single();
    LaurentSum rx;
    bool ok = true;
    for (const auto& [p, c] : d.R.terms()) {
      Rational e = p / q;
      if (e.get_den() != 1) {
        ok = false;
        break;
      }
      // c z^p = c (x/k)^e
      long n = e.get_num().get_si();
      Rational kp = 1;
      for (long i = 0; i < std::labs(n); ++i) kp *= k;
      rx = rx + LaurentSum::monomial(n >= 0 ? Rational(c / kp) : Rational(c * kp), e);
    }
    if (ok) {
      d.R_of_x = rx;
      if (rx.is_zero()) {
        d.R_as_linear = Rational(0);
      } else if (rx.is_monomial() && rx.single().second == 1) {
        d.R_as_linear = rx.single().first;
      }
    }
  }
  return d;
}

}  // namespace zerodist
