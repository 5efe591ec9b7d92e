import cmath
import math
from fractions import Fraction
from math import comb

import pytest

import zerodist as zd


def test_builtins_listed():
    assert set(zd.builtins()) == {"jacobi", "laguerre", "hermite", "bell", "inverse_erf"}


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_bell_polynomials_are_stirling_rows():
    polys = zd.generate("bell", 8)
    for n, p in enumerate(polys):
        assert zd.fractions(p) == [stirling2(n, k) for k in range(n + 1)]


def test_hermite_zeros_scaled():
    z, real, inter = zd.scaled_zeros("hermite", 2)
    assert z == pytest.approx([-0.5, 0.5], abs=1e-15)
    assert real and inter


def test_series_catalan_and_bell():
    assert zd.fractions(zd.series("laguerre", 8)) == [Fraction(comb(2 * m, m), m + 1) for m in range(8)]
    want = [Fraction((-m) ** m, math.factorial(m + 1)) for m in range(8)]
    assert zd.fractions(zd.series("bell", 8)) == want
    assert zd.series("hermite", 5) == zd.closed_form_series("hermite", 5)


def test_limit_laws():
    assert zd.pdf("hermite", 0.0) == pytest.approx(math.sqrt(2) / math.pi, rel=1e-14)
    assert zd.cdf("jacobi", -0.5) == pytest.approx(1 / 3, rel=1e-14)
    assert zd.pdf("inverse_erf", 0.0) == pytest.approx(math.sqrt(2) / math.pi ** 1.5, rel=1e-13)
    m = zd.moments("laguerre", 3)
    assert m == pytest.approx([1, 1, 2, 5], rel=1e-12)


def test_stieltjes_is_herglotz():
    for fam in zd.builtins():
        assert zd.stieltjes(fam, complex(0.3, 1.0)).imag < 0


def test_ks_and_abel():
    assert zd.ks("bell", 20) == pytest.approx(0.05, abs=1e-12)
    assert zd.ks("hermite", 20) < zd.ks("hermite", 5)
    assert zd.abel_kappa("bell") == "-1/4"
    assert zd.abel_kappa("laguerre") == "-2/9"
    assert zd.abel_kappa("jacobi") is None


def test_special_functions():
    w = zd.lambert_w0(complex(1, 1))
    assert abs(w * cmath.exp(w) - complex(1, 1)) < 1e-14
    assert zd.lambert_w0(complex(math.e, 0)) == pytest.approx(1, abs=1e-15)
    # daw(x) = sqrt(pi)/2 exp(-x^2) erfi(x); erfi via its series
    x = 0.7
    erfi = 2 / math.sqrt(math.pi) * sum(x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1)) for k in range(40))
    assert zd.dawson(x) == pytest.approx(math.sqrt(math.pi) / 2 * math.exp(-x * x) * erfi, rel=1e-14)
    assert zd.faddeeva(complex(0, 1)).real == pytest.approx(math.exp(1) * math.erfc(1), rel=1e-14)


def test_run_document():
    doc = zd.run("series", "laguerre", n=5)
    assert doc["meta"]["sigma"] == "1"
    assert [r["c"] for r in doc["data"]["series"]] == ["1", "1", "2", "5", "14"]


def test_errors_raise():
    with pytest.raises(zd.Error):
        zd.generate("nosuch", 3)
    with pytest.raises(zd.Error):
        zd.run("gen", "bell", n=0)
