#include <doctest.h>

#include "zerodist/errors.hpp"
#include "zerodist/families.hpp"
#include "zerodist/io.hpp"

using namespace zerodist;

namespace {

ExactPoly P(std::initializer_list<const char*> c) {
  std::vector<Rational> v;
  for (const char* s : c) v.push_back(parse_rational(s));
  return ExactPoly(v);
}

Rational binom(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational fact(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

}  // namespace

TEST_SUITE("families") {
  TEST_CASE("single recurrence steps") {
    auto bell = builtin("bell");
    CHECK(next_poly(P({"1"}), 0, bell) == P({"0", "1"}));
    CHECK(next_poly(P({"0", "1"}), 1, bell) == P({"0", "1", "1"}));
    CHECK(next_poly(P({"0", "1"}), 1, builtin("inverse_erf")) == P({"-1/2", "0", "1"}));
    CHECK(next_poly(P({"0", "2"}), 1, builtin("hermite")) == P({"-2", "0", "4"}));
  }

  TEST_CASE("generate small cases") {
    auto b = generate(builtin("bell"), 3);
    REQUIRE(b.size() == 4);
    CHECK(b[3] == P({"0", "1", "3", "1"}));
    auto h = generate(builtin("hermite"), 1);
    CHECK(h[1] == P({"0", "2"}));
    auto l = generate(builtin("laguerre", {{"alpha", 0}}), 2);
    CHECK(l[1] == P({"-1", "1"}));
    CHECK(l[2] == P({"2", "-4", "1"}));
    auto j = generate(builtin("jacobi", {{"alpha", 0}, {"beta", 0}}), 1);
    CHECK(j[1] == P({"0", "1"}));
  }

  TEST_CASE("builtin coefficient rules") {
    auto lag = builtin("laguerre", {{"alpha", 0}});
    CHECK(lag.alpha[2].is_zero());
    CHECK(lag.alpha[1](7) == -1);
    CHECK(lag.alpha[0].is_zero());
    CHECK(lag.beta[1](7) == 1);
    CHECK(lag.beta[0](7) == -8);
    auto bell = builtin("bell");
    CHECK(bell.alpha[1](3) == 1);
    CHECK(bell.beta[1](3) == 1);
    CHECK(bell.alpha[0].is_zero());
    CHECK(bell.alpha[2].is_zero());
    CHECK(bell.beta[0].is_zero());
    auto jac = builtin("jacobi", {{"alpha", 0}, {"beta", 0}});
    for (long n : {0, 1, 5, 40}) CHECK(jac.alpha[2](n) == Rational(1, 2 * n + 1));
    CHECK(jac.beta[0].is_zero());
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(builtin("laguerre"), BadParam);
    CHECK_THROWS_AS(builtin("laguerre", {{"alpha", -1}}), BadParam);
    CHECK_THROWS_AS(builtin("hermite", {{"alpha", 0}}), BadParam);
    CHECK_THROWS_AS(builtin("jacobi", {{"alpha", Rational(-1, 2)}, {"beta", Rational(-1, 2)}}), BadParam);
    CHECK_THROWS_AS(builtin("chebyshev"), UnknownFamily);
    CHECK_NOTHROW(builtin("jacobi", {{"alpha", Rational(1, 2)}, {"beta", Rational(-1, 3)}}));
  }

  TEST_CASE("bell coefficients are Stirling numbers of the second kind") {
    auto b = generate(builtin("bell"), 30);
    std::vector<std::vector<Rational>> S{{1}};
    for (int n = 1; n <= 30; ++n) {
      std::vector<Rational> row(n + 1);
      for (int k = 1; k <= n; ++k)
        row[k] = Rational(k) * (k < n ? S[n - 1][k] : Rational(0)) + S[n - 1][k - 1];
      S.push_back(row);
    }
    for (int n = 0; n <= 30; ++n) {
      REQUIRE(b[n].degree() == n);
      for (int k = 0; k <= n; ++k) CHECK(b[n].coeff(k) == S[n][k]);
    }
  }

  TEST_CASE("hermite matches the three-term recurrence") {
    auto h = generate(builtin("hermite"), 30);
    std::vector<ExactPoly> H{P({"1"}), P({"0", "2"})};
    ExactPoly x2 = P({"0", "2"});
    for (int n = 1; n < 30; ++n) H.push_back(x2 * H[n] - Rational(2 * n) * H[n - 1]);
    for (int n = 0; n <= 30; ++n) {
      CHECK(h[n] == H[n]);
      CHECK(h[n].leading() == Rational(Integer(1) << n));
    }
  }

  TEST_CASE("laguerre equals (-1)^n n! L_n^alpha") {
    for (Rational a : {Rational(0), Rational(1, 2), Rational(3)}) {
      auto l = generate(builtin("laguerre", {{"alpha", a}}), 15);
      for (int n = 0; n <= 15; ++n) {
        // L_n^a(x) = sum_k (-1)^k binom(n+a, n-k) x^k / k!, binom via the falling product
        for (int k = 0; k <= n; ++k) {
          Rational b = 1;
          for (int i = 0; i < n - k; ++i) b *= (n + a - i) / Rational(i + 1);
          Rational want = (k % 2 ? -1 : 1) * b / fact(k) * fact(n) * (n % 2 ? -1 : 1);
          CHECK(l[n].coeff(k) == want);
        }
      }
    }
  }

  TEST_CASE("jacobi(0,0) is a multiple of Legendre") {
    auto j = generate(builtin("jacobi", {{"alpha", 0}, {"beta", 0}}), 20);
    std::vector<ExactPoly> L{P({"1"}), P({"0", "1"})};
    ExactPoly x = P({"0", "1"});
    for (int n = 1; n < 20; ++n)
      L.push_back(Rational(2 * n + 1, n + 1) * (x * L[n]) - Rational(n, n + 1) * L[n - 1]);
    for (int n = 0; n <= 20; ++n) {
      Rational s = j[n].leading() / L[n].leading();
      CHECK(j[n] == s * L[n]);
    }
    // Legendre leading coefficient binom(2n, n) / 2^n
    CHECK(L[6].leading() == binom(12, 6) / 64);
  }

  TEST_CASE("degree grows by one for every builtin") {
    std::map<std::string, std::map<std::string, Rational>> ps{
        {"jacobi", {{"alpha", Rational(1, 2)}, {"beta", 2}}}, {"laguerre", {{"alpha", 1}}}, {"hermite", {}},
        {"bell", {}}, {"inverse_erf", {}}};
    for (const auto& [name, prm] : ps) {
      auto g = generate(builtin(name, prm), 60);
      for (int n = 0; n <= 60; ++n) CHECK(g[n].degree() == n);
    }
  }

  TEST_CASE("generate is deterministic") {
    auto f = builtin("jacobi", {{"alpha", Rational(1, 3)}, {"beta", Rational(2, 5)}});
    CHECK(generate(f, 25) == generate(f, 25));
  }

  TEST_CASE("rational functions of n") {
    RationalFnOfN f({Rational(1)}, {Rational(-3), Rational(1)});  // 1 / (n - 3)
    CHECK(f(4) == 1);
    CHECK_THROWS_AS(f(3), DenominatorZeroAtN);
    CHECK_FALSE(f.finite_from(0));
    CHECK(f.finite_from(4));
    CHECK(f.degree_difference() == -1);
    RationalFnOfN g({Rational(2), Rational(4)}, {Rational(2), Rational(2)});  // (4n+2)/(2n+2)
    CHECK(g.leading_ratio() == 2);
    CHECK(g(1) == Rational(3, 2));
  }

  TEST_CASE("custom family from JSON") {
    auto j = Json::parse(R"({"name":"erfq","alpha":[[["-1"],["1","1"]],[["0"],["1"]],[["0"],["1"]]],
                             "beta":[[["0"],["1"]],[["1"],["1"]]]})");
    FamilySpec f = family_from_json(j);
    auto ref = builtin("inverse_erf");
    CHECK(generate(f, 12) == generate(ref, 12));
    auto bad = Json::parse(R"({"name":"x","alpha":[[["1"],["-2","1"]],[["0"],["1"]],[["0"],["1"]]],
                               "beta":[[["0"],["1"]],[["1"],["1"]]]})");
    CHECK_THROWS_AS(family_from_json(bad), BadParam);  // pole at n = 2
    CHECK_THROWS(family_from_json(Json::parse(R"({"name":"x","alpha":[]})")));
  }
}
