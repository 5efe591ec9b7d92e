#include "zerodist/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "zerodist/asymptotic.hpp"
#include "zerodist/errors.hpp"

namespace zerodist {

RootEnclosure RootEnclosure::make(Rational lo, Rational hi) {
  RootEnclosure e;
  e.lo = std::move(lo);
  e.hi = std::move(hi);
  e.value = to_high((e.lo + e.hi) / 2);
  return e;
}

// ------------------------------------------------------------------ IntPoly

IntPoly::IntPoly(const ExactPoly& p) {
  Integer l = 1;
  for (const auto& q : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) c.push_back(Integer(q.get_num() * (l / q.get_den())));
  *this = IntPoly(std::move(c));
}

IntPoly::IntPoly(std::vector<Integer> c) : c_(std::move(c)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  Integer g = 0;
  for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& v : c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

int IntPoly::sign_at(const Rational& x) const {
  if (c_.empty()) return 0;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer h = c_.back();
  if (q == 1) {
    for (int i = degree() - 1; i >= 0; --i) {
      h *= p;
      h += c_[i];
    }
    return sgn(h);
  }
  // q^d P(p/q) = sum c_i p^i q^(d-i)
  Integer qk = q, t;
  for (int i = degree() - 1; i >= 0; --i) {
    h *= p;
    if (c_[i] != 0) {
      t = c_[i] * qk;
      h += t;
    }
    if (i > 0) qk *= q;
  }
  return sgn(h);
}

int IntPoly::sign_at_infinity(int direction) const {
  if (c_.empty()) return 0;
  int s = sgn(c_.back());
  return (direction < 0 && degree() % 2 == 1) ? -s : s;
}

IntPoly IntPoly::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(d));
}

// ------------------------------------------------------------ SturmSequence

namespace {

// remainder of a by b up to a positive factor
std::vector<Integer> positive_prem(std::vector<Integer> a, const std::vector<Integer>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Integer& lb = b.back();
  Integer alb = abs(lb);
  int sb = sgn(lb);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    Integer la = a.back();
    if (sb < 0) la = -la;
    for (auto& v : a) v *= alb;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    // keep the numbers small
    Integer g = 0;
    for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
      for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return a;
}

int variations_of(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmSequence::SturmSequence(const IntPoly& p) {
  seq_.push_back(p);
  if (p.degree() <= 0) return;
  seq_.push_back(p.derivative());
  while (seq_.back().degree() > 0) {
    auto r = positive_prem(seq_[seq_.size() - 2].coefficients(), seq_.back().coefficients());
    if (r.empty()) break;
    for (auto& v : r) v = -v;
    seq_.emplace_back(std::move(r));
  }
}

int SturmSequence::variations(const Rational& x) const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& p : seq_) s.push_back(p.sign_at(x));
  return variations_of(s);
}

int SturmSequence::variations_at_infinity(int direction) const {
  std::vector<int> s;
  for (const auto& p : seq_) s.push_back(p.sign_at_infinity(direction));
  return variations_of(s);
}

int SturmSequence::count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

// ---------------------------------------------------------------- isolation

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  for (a %= m; e; e >>= 1, a = a * a % m)
    if (e & 1) r = r * a % m;
  return r;
}

// degree of gcd(f, f') over Z/m, or -1 when m divides the leading coefficient
int gcd_degree_mod(const IntPoly& f, u64 m) {
  std::vector<u64> a, b;
  for (const auto& c : f.coefficients()) a.push_back(mpz_fdiv_ui(c.get_mpz_t(), m));
  if (a.back() == 0) return -1;
  for (std::size_t i = 1; i < a.size(); ++i) b.push_back(a[i] * (i % m) % m);
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(b);
  while (!b.empty()) {
    u64 inv = pow_mod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      u64 q = a.back() * inv % m;
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = (a[off + i] + (m - q) * b[i]) % m;
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

// A polynomial squarefree modulo a prime not dividing its leading coefficient
// is squarefree over Q, which settles the common case without a rational gcd.
bool is_squarefree(const ExactPoly& p) {
  if (p.degree() <= 1) return true;
  IntPoly f(p);
  for (u64 m : {2147483647ull, 2147483629ull, 2147483587ull, 2147483579ull}) {
    if (m <= static_cast<u64>(f.degree())) continue;
    int d = gcd_degree_mod(f, m);
    if (d == 0) return true;
  }
  return ExactPoly::gcd(p, p.derivative()).degree() <= 0;
}

ExactPoly squarefree_part(const ExactPoly& p) {
  if (p.degree() <= 0 || is_squarefree(p)) return p;
  ExactPoly g = ExactPoly::gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return ExactPoly::divmod(p, g).first;
}

int sturm_real_root_count(const ExactPoly& p) {
  SturmSequence s(IntPoly(squarefree_part(p)));
  return s.total();
}

namespace {

Rational cauchy_bound(const IntPoly& p) {
  const auto& c = p.coefficients();
  Integer m = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, Integer(abs(c[i])));
  Rational b(m, abs(c.back()));
  b.canonicalize();
  // round up to an integer to keep bisection points simple
  Integer up = b.get_num() / b.get_den() + 2;
  return Rational(up);
}

void isolate_rec(const SturmSequence& s, const IntPoly& p, Rational a, Rational b, int va, int vb,
                 std::vector<RootEnclosure>& out) {
  int c = va - vb;
  if (c == 0) return;
  if (c == 1) {
    // exactly one root in (a, b]
    if (p.sign_at(b) == 0) {
      out.push_back(RootEnclosure::make(b, b));
      return;
    }
    while (p.sign_at(a) == 0) {
      Rational m = (a + b) / 2;
      int vm = s.variations(m);
      if (va - vm == 1) {
        if (p.sign_at(m) == 0) {
          out.push_back(RootEnclosure::make(m, m));
          return;
        }
        b = m;
      } else {
        a = m;
        va = vm;
      }
    }
    out.push_back(RootEnclosure::make(a, b));
    return;
  }
  Rational m = (a + b) / 2;
  int vm = s.variations(m);
  isolate_rec(s, p, a, m, va, vm, out);
  isolate_rec(s, p, m, b, vm, vb, out);
}

}  // namespace

std::vector<RootEnclosure> isolate_roots(const ExactPoly& p, IsolationReport* report) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  ExactPoly sq = squarefree_part(p);
  if (report) report->repeated_roots = sq.degree() != p.degree();
  std::vector<RootEnclosure> out;
  if (sq.degree() >= 1) {
    IntPoly ip(sq);
    SturmSequence s(ip);
    Rational B = cauchy_bound(ip);
    isolate_rec(s, ip, -B, B, s.variations(-B), s.variations(B), out);
  }
  if (report) report->real_root_count = static_cast<int>(out.size());
  return out;
}

// --------------------------------------------------------------- refinement

namespace {

struct Bisector {
  const IntPoly& p;
  Rational lo, hi;
  int slo = 0;
  bool exact = false;

  Bisector(const IntPoly& poly, const RootEnclosure& e) : p(poly), lo(e.lo), hi(e.hi) {
    if (lo == hi) {
      exact = true;
      return;
    }
    slo = p.sign_at(lo);
    if (slo == 0) {
      hi = lo;
      exact = true;
      return;
    }
    int shi = p.sign_at(hi);
    if (shi == 0) {
      lo = hi;
      exact = true;
      return;
    }
    if (slo == shi) throw InsufficientSeparation("enclosure has no sign change for this polynomial");
  }

  void step() {
    Rational m = (lo + hi) / 2;
    split(m);
  }

  void split(const Rational& m) {
    int s = p.sign_at(m);
    if (s == 0) {
      lo = hi = m;
      exact = true;
    } else if (s == slo) {
      lo = m;
    } else {
      hi = m;
    }
  }

  RootEnclosure result() const { return RootEnclosure::make(lo, hi); }
};

}  // namespace

RootEnclosure refine(const RootEnclosure& e, const IntPoly& p, const Rational& tol) {
  Bisector b(p, e);
  while (!b.exact && b.hi - b.lo > tol) b.step();
  return b.result();
}

RootEnclosure refine(const RootEnclosure& e, const ExactPoly& p, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("refine: tol must be positive");
  IntPoly ip(p);
  if (!e.exact() && ip.sign_at(e.lo) != 0 && ip.sign_at(e.lo) == ip.sign_at(e.hi)) ip = IntPoly(squarefree_part(p));
  return refine(e, ip, from_double(tol));
}

RootEnclosure refine_relative(const RootEnclosure& e, const IntPoly& p, int bits) {
  Bisector b(p, e);
  if (!b.exact && b.lo < 0 && b.hi > 0) b.split(Rational(0));
  Rational scale(1);
  mpq_div_2exp(scale.get_mpq_t(), scale.get_mpq_t(), bits);
  for (int guard = 0; !b.exact && guard < 100000; ++guard) {
    Rational m = std::min(abs(b.lo), abs(b.hi));
    if (b.hi - b.lo <= scale * m) break;
    b.step();
  }
  return b.result();
}

// --------------------------------------------------------------- interlacing

namespace {

// 1: a <= b certainly, 0: a > b certainly, -1: undecided
int le(const RootEnclosure& a, const RootEnclosure& b) {
  if (a.hi <= b.lo) return 1;
  if (a.lo > b.hi) return 0;
  return -1;
}

}  // namespace

bool check_interlacing(const std::vector<RootEnclosure>& lo, const std::vector<RootEnclosure>& hi) {
  if (hi.size() != lo.size() + 1) throw std::invalid_argument("check_interlacing: need |roots_hi| = |roots_lo| + 1");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    for (int r : {le(hi[k], lo[k]), le(lo[k], hi[k + 1])}) {
      if (r < 0) throw InsufficientSeparation("enclosures overlap at k=" + std::to_string(k + 1));
      if (r == 0) return false;
    }
  }
  return true;
}

bool check_interlacing(const ExactPoly& p_lo, std::vector<RootEnclosure>& lo, const ExactPoly& p_hi,
                       std::vector<RootEnclosure>& hi, int budget) {
  if (hi.size() != lo.size() + 1) throw std::invalid_argument("check_interlacing: need |roots_hi| = |roots_lo| + 1");
  IntPoly ilo(squarefree_part(p_lo)), ihi(squarefree_part(p_hi));
  auto decide = [&](RootEnclosure& a, const IntPoly& pa, RootEnclosure& b, const IntPoly& pb, std::size_t k) {
    for (int it = 0; it <= budget; ++it) {
      int r = le(a, b);
      if (r >= 0) return r == 1;
      // shrink the wider one
      RootEnclosure& w = (a.width() >= b.width() && !a.exact()) || b.exact() ? a : b;
      const IntPoly& pw = &w == &a ? pa : pb;
      w = refine(w, pw, w.width() / 2);
    }
    throw InsufficientSeparation("enclosures at k=" + std::to_string(k + 1) +
                                 " still overlap after the refinement budget (repeated root?)");
  };
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!decide(hi[k], ihi, lo[k], ilo, k)) return false;
    if (!decide(lo[k], ilo, hi[k + 1], ihi, k)) return false;
  }
  return true;
}

// ------------------------------------------------------------------ tracker

ZeroTracker::ZeroTracker(FamilySpec fam, int work_bits) : fam_(std::move(fam)), bits_(work_bits) {
  cur_.n = 0;
  cur_.poly = ExactPoly::constant(1);
}

namespace {

// dyadic point of [lo, hi] with the fewest fractional bits; keeps evaluation
// points from inheriting the full bit length of earlier enclosures
Rational short_point(const Rational& lo, const Rational& hi) {
  Integer num;
  Rational x;
  for (unsigned k = 0;; ++k) {
    Rational h = hi;
    mpq_mul_2exp(h.get_mpq_t(), h.get_mpq_t(), k);
    mpz_fdiv_q(num.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    x = Rational(num);
    mpq_div_2exp(x.get_mpq_t(), x.get_mpq_t(), k);
    if (x >= lo) return x;
  }
}

}  // namespace

std::optional<std::vector<RootEnclosure>> ZeroTracker::bracket(const ExactPoly& next, const IntPoly& ip,
                                                               double eps_scale) const {
  const auto& prev = cur_.roots;
  std::vector<Rational> seeds;
  for (const auto& e : prev) seeds.push_back(e.exact() ? e.lo : short_point(e.lo, e.hi));

  struct Pt {
    Rational x;
    int s;
  };
  std::vector<Pt> pts;

  auto outer = [&](int dir) -> std::optional<Pt> {
    const Rational& edge = dir < 0 ? seeds.front() : seeds.back();
    Rational span = seeds.back() - seeds.front();
    Rational d = std::max(Rational(1), span);
    int want = ip.sign_at_infinity(dir);
    for (int i = 0; i < 256; ++i) {
      Rational x = edge + dir * d;
      int s = ip.sign_at(x);
      if (s == want) return Pt{x, s};
      d *= 2;
    }
    return std::nullopt;
  };

  auto L = outer(-1), U = outer(1);
  if (!L || !U) return std::nullopt;
  pts.push_back(*L);
  Rational eps_q = from_double(eps_scale);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const Rational& s = seeds[i];
    int sg = ip.sign_at(s);
    if (sg == 0) {
      Rational left = i > 0 ? seeds[i - 1] : L->x;
      Rational right = i + 1 < seeds.size() ? seeds[i + 1] : U->x;
      Rational eps = std::min(s - left, right - s) * eps_q;
      pts.push_back({s - eps, ip.sign_at(s - eps)});
      pts.push_back({s, 0});
      pts.push_back({s + eps, ip.sign_at(s + eps)});
    } else {
      pts.push_back({s, sg});
    }
  }
  pts.push_back(*U);

  std::vector<RootEnclosure> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].s == 0) {
      out.push_back(RootEnclosure::make(pts[i].x, pts[i].x));
    } else if (i + 1 < pts.size() && pts[i + 1].s != 0 && pts[i + 1].s != pts[i].s) {
      out.push_back(RootEnclosure::make(pts[i].x, pts[i + 1].x));
    }
  }
  if (static_cast<int>(out.size()) != next.degree()) return std::nullopt;
  return out;
}

const ZeroStep& ZeroTracker::advance() {
  ExactPoly next = next_poly(cur_.poly, fam_.start_index + cur_.n, fam_);
  if (next.is_zero()) throw BadParam(fam_.name + ": recurrence produced the zero polynomial at n=" + std::to_string(cur_.n + 1));
  ZeroStep step;
  step.n = cur_.n + 1;
  step.poly = next;
  IntPoly ip(next);

  std::optional<std::vector<RootEnclosure>> roots;
  if (next.degree() == 1) {
    Rational r = -next.coeff(0) / next.coeff(1);
    roots = std::vector<RootEnclosure>{RootEnclosure::make(r, r)};
  } else if (cur_.all_real && !cur_.roots.empty() && next.degree() == cur_.poly.degree() + 1 &&
             static_cast<int>(cur_.roots.size()) == cur_.poly.degree()) {
    IntPoly iprev(squarefree_part(cur_.poly));
    for (int attempt = 0; attempt < 3 && !roots; ++attempt) {
      roots = bracket(next, ip, std::pow(2.0, -2 - 8 * attempt));
      if (!roots)
        for (auto& e : cur_.roots) e = refine_relative(e, iprev, bits_ + 24 * (attempt + 1));
    }
  }
  if (roots) {
    step.roots = std::move(*roots);
    step.all_real = true;
  } else {
    IsolationReport rep;
    step.roots = isolate_roots(next, &rep);
    step.sturm_fallback = true;
    step.all_real = !rep.repeated_roots && static_cast<int>(step.roots.size()) == next.degree();
    ip = IntPoly(squarefree_part(next));
  }
  for (auto& e : step.roots) e = refine_relative(e, ip, bits_);

  if (cur_.n == 0) {
    step.interlaces_previous = true;  // P_0 has no zeros
  } else if (step.all_real && cur_.all_real && step.roots.size() == cur_.roots.size() + 1) {
    step.interlaces_previous = check_interlacing(cur_.poly, cur_.roots, next, step.roots);
  } else {
    step.interlaces_previous = false;
  }
  cur_ = std::move(step);
  return cur_;
}

const ZeroStep& ZeroTracker::advance_to(int n) {
  while (cur_.n < n) advance();
  return cur_;
}

// ------------------------------------------------------------ step measures

double StepMeasure::cdf(double t) const {
  auto it = std::upper_bound(zeros.begin(), zeros.end(), t);
  return double(it - zeros.begin()) / n;
}

double StepMeasure::cdf_left(double t) const {
  auto it = std::lower_bound(zeros.begin(), zeros.end(), t);
  return double(it - zeros.begin()) / n;
}

StepMeasure empirical_cdf(const std::vector<RootEnclosure>& roots, int n, const HighFloat& phi) {
  if (static_cast<int>(roots.size()) != n) throw std::invalid_argument("empirical_cdf: need exactly n roots");
  if (!(phi > 0)) throw std::invalid_argument("empirical_cdf: phi must be positive");
  StepMeasure m;
  m.n = n;
  m.phi_value = phi;
  for (const auto& e : roots) m.scaled_zeros.push_back(e.value / phi);
  std::sort(m.scaled_zeros.begin(), m.scaled_zeros.end());
  for (const auto& z : m.scaled_zeros) m.zeros.push_back(z.convert_to<double>());
  return m;
}

double ks_distance(const StepMeasure& emp, const LimitMeasure& lim) {
  double d = 0;
  const auto& z = emp.zeros;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i > 0 && z[i] == z[i - 1]) continue;
    double t = z[i];
    double g = lim.cdf(t);
    double gl = lim.cdf(std::nextafter(t, -INFINITY));
    d = std::max({d, std::fabs(emp.cdf(t) - g), std::fabs(emp.cdf_left(t) - gl)});
  }
  for (double e : {lim.support_lo, lim.support_hi})
    if (std::isfinite(e)) d = std::max(d, std::fabs(emp.cdf(e) - lim.cdf(e)));
  return d;
}

}  // namespace zerodist
