import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from heunbessel.specfun import (
    BesselKind,
    assoc_legendre,
    bessel,
    bessel_half_integer,
    bessel_j,
    bessel_j_reduced,
    bessel_j_scaled_sequence,
    bessel_ratio,
    bessel_sequence,
    bessel_y,
    half_integer_j_table,
    hankel1,
    hankel2,
    hypergeom_terminating,
    jacobi_poly,
    jacobi_table,
)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_j0_at_zero():
    assert bessel(BesselKind.J, 0, 0) == 1


def test_j_half_closed_form():
    x = 2.0
    assert rel(bessel("J", 0.5, x), math.sqrt(2 / (math.pi * x)) * math.sin(x)) < 1e-14


def test_j3_exact_rational_series():
    # 200 terms of the ascending series in exact rationals
    x = Fraction(3, 2)
    h2 = (x / 2) ** 2
    total, term = Fraction(0), (x / 2) ** 3 / math.factorial(3)
    for k in range(200):
        total += term
        term = -term * h2 / ((k + 1) * (k + 4))
    assert rel(bessel("J", 3, 1.5), float(total)) < 1e-14


@pytest.mark.parametrize("nu", [0, 1, 2.5, -0.3, -3, 7.25, 30])
@pytest.mark.parametrize("x", [0.1, 1.0, 4.7, 12.0, 35.0, 2 + 3j, -5 + 0.5j, 0.3 - 9j, 60 + 1j])
def test_j_against_mpmath(nu, x):
    ref = complex(mpmath.besselj(nu, x))
    got = bessel_j(nu, x)
    assert abs(got - ref) <= 1e-11 * max(abs(ref), 1e-3 * max(1.0, abs(ref)))


@pytest.mark.parametrize("nu", [0, 1, 3, 0.5, 2.3, -1.7])
@pytest.mark.parametrize("x", [0.5, 2.0, 9.0, 25.0, 1 + 1j, 3 - 4j])
def test_y_and_hankel_against_scipy(nu, x):
    assert rel(bessel_y(nu, x), sc.yv(nu, x)) < 1e-10
    assert rel(hankel1(nu, x), sc.hankel1(nu, x)) < 1e-10
    assert rel(hankel2(nu, x), sc.hankel2(nu, x)) < 1e-10


def test_y_and_hankel_singular_at_zero():
    for kind in ("Y", "H1", "H2"):
        with pytest.raises(ValueError):
            bessel(kind, 1.0, 0.0)


@settings(max_examples=60, deadline=None)
@given(
    nu=st.floats(-6, 6, allow_nan=False),
    re=st.floats(0.05, 30),
    im=st.floats(-5, 5),
)
def test_j_y_hankel_identities(nu, re, im):
    x = complex(re, im)
    j, y, h1, h2 = (bessel(k, nu, x) for k in ("J", "Y", "H1", "H2"))
    scale = max(abs(h1), abs(h2))
    assert abs(j - (h1 + h2) / 2) <= 1e-10 * scale
    assert abs(y - (h1 - h2) / 2j) <= 1e-10 * scale


@pytest.mark.parametrize("order,x,expected", [
    (-0.5, 1.0, math.sqrt(2 / math.pi) * math.cos(1.0)),
    (1.5, 1.0, math.sqrt(2 / math.pi) * (math.sin(1.0) - math.cos(1.0))),
])
def test_half_integer_closed_forms(order, x, expected):
    assert rel(bessel_half_integer(order, x), expected) < 1e-14


def test_half_integer_matches_generic_path():
    for order in (-5.5, -2.5, -0.5, 0.5, 2.5, 7.5, 15.5):
        for x in (0.3, 3.0, 11.0, 2 + 1j):
            assert rel(bessel_half_integer(order, x), bessel_j(order, x)) < 1e-12


def test_half_integer_errors():
    with pytest.raises(ValueError):
        bessel_half_integer(1.0, 2.0)
    with pytest.raises(ValueError):
        bessel_half_integer(-1.5, 0.0)
    assert bessel_half_integer(2.5, 0.0) == 0


def test_half_integer_table_shape():
    t = half_integer_j_table(-3, 4, np.linspace(0.5, 10, 7))
    assert t.shape == (8, 7)
    assert np.allclose(t[3 + 2].real, sc.jv(2.5, np.linspace(0.5, 10, 7)), rtol=1e-12)


def test_large_argument_asymptotic():
    # leading cosine term; the first correction is (4 nu^2 - 1)/(8x) relative to the envelope
    for nu in (0, 0.5, 1, 2.5):
        # start where that correction is below 5e-4
        x0 = max(50.0, abs(4 * nu * nu - 1) / 8 / 5e-4)
        for x in (x0, 2 * x0, 4 * x0):
            env = math.sqrt(2 / (math.pi * x))
            asym = env * math.cos(x - nu * math.pi / 2 - math.pi / 4)
            assert abs(bessel_j(nu, x).real - asym) < 1e-3 * env


def test_ratio_law_large_order():
    for x in (0.5, 1.0, 3.0):
        nu = 100
        got = (bessel_j(nu + 2, x) / bessel_j(nu, x)).real
        assert rel(got, x * x / (4 * (nu + 1) * (nu + 2))) < 0.01


@pytest.mark.parametrize("kind", ["J", "Y", "H1", "H2"])
def test_sequence_matches_pointwise(kind):
    x = 6.5 + 0.7j
    seq = bessel_sequence(kind, 0.25, 12, x, step=2)
    ref = [bessel(kind, 0.25 + 2 * k, x) for k in range(12)]
    np.testing.assert_allclose(seq, ref, rtol=1e-10)


@pytest.mark.parametrize("x", [0.0, 0.4, 3.0, 7.9, 8.5, 20.0, 2j, 5 - 3j])
def test_scaled_sequence(x):
    nu0 = 1.5
    out = bessel_j_scaled_sequence(nu0, 10, x, 2)
    if x == 0:
        assert out[0] == pytest.approx(1 / math.gamma(nu0 + 1))
        assert np.all(out[1:] == 0)
        return
    ref = np.array([complex(mpmath.besselj(nu0 + 2 * k, x)) for k in range(10)]) / (x / 2) ** nu0
    np.testing.assert_allclose(out, ref, rtol=1e-12, atol=1e-14 * abs(ref[0]))


def test_reduced_j():
    s = 1.3 + 0.2j
    assert rel(bessel_j_reduced(2.5, s), complex(mpmath.besselj(2.5, s)) / (s / 2) ** 2.5) < 1e-13


def test_bessel_ratio_j():
    r = bessel_ratio("J", 3.0, 4.0, 2)
    assert rel(r[0], sc.jv(4, 4.0) / sc.jv(3, 4.0)) < 1e-12
    assert rel(r[1], sc.jv(5, 4.0) / sc.jv(4, 4.0)) < 1e-12


def test_kind_coercion():
    assert BesselKind.coerce(1) is BesselKind.J
    assert BesselKind.coerce("h2") is BesselKind.H2
    with pytest.raises(ValueError):
        BesselKind.coerce("K")


# ---------------------------------------------------------------------------
# polynomials


def test_jacobi_degree_zero():
    assert jacobi_poly(0, 0.3, 1.7, 0.2) == 1


def test_jacobi_reflection_example():
    assert jacobi_poly(3, 1.5, 0.5, -0.3) == pytest.approx(-jacobi_poly(3, 0.5, 1.5, 0.3), rel=1e-15)


def test_jacobi_reflection_grid():
    x = np.linspace(-1, 1, 41)
    for a, b in [(0.5, 1.5), (2.0, 0.0), (-0.3, 3.2)]:
        A = jacobi_table(20, a, b, x)
        B = jacobi_table(20, b, a, -x)
        for n in range(21):
            assert np.max(np.abs(B[n] - (-1) ** n * A[n])) <= 64 * np.finfo(float).eps * max(1.0, np.max(np.abs(A[n])))


def test_jacobi_rodrigues():
    # P_2^(1,1)(x) = (1/8)(1-x^2)^-1 d^2/dx^2 (1-x^2)^3
    poly = np.polynomial.Polynomial([1, 0, -1]) ** 3
    x = 0.4
    expected = poly.deriv(2)(x) / (8 * (1 - x * x))
    assert jacobi_poly(2, 1, 1, x) == pytest.approx(expected, rel=1e-14)


def test_jacobi_against_scipy():
    x = np.linspace(-1, 1, 13)
    for n in range(12):
        np.testing.assert_allclose(jacobi_poly(n, 0.7, -0.4, x), sc.eval_jacobi(n, 0.7, -0.4, x), rtol=1e-12, atol=1e-13)


def test_legendre_endpoint():
    for ell in range(8):
        assert assoc_legendre(ell, 0, 1.0) == pytest.approx(1.0)


def test_legendre_jacobi_relation():
    # P_{n+k}^k(x) = (-1)^k (n+2k)! / (2^k (n+k)!) (1-x^2)^(k/2) P_n^(k,k)(x)
    n, k, x = 2, 1, 0.5
    c = (-1) ** k * math.factorial(n + 2 * k) / (2**k * math.factorial(n + k))
    expected = c * (1 - x * x) ** (k / 2) * jacobi_poly(n, k, k, x)
    assert rel(assoc_legendre(n + k, k, x), expected) < 1e-10


def test_legendre_recurrence_oracle():
    # independent recurrence in n at fixed k from P_k^k, P_{k+1}^k
    x, k = 0.2, 2
    p_kk = 3 * (1 - x * x)
    p_k1 = x * 5 * p_kk
    p3 = p_k1
    assert assoc_legendre(3, k, x) == pytest.approx(p3, rel=1e-14)
    assert assoc_legendre(3, k, x) == pytest.approx(sc.lpmv(k, 3, x), rel=1e-13)


def test_legendre_domain():
    with pytest.raises(ValueError):
        assoc_legendre(2, 1, 1.5)


def test_hypergeom_trivial_and_jacobi():
    assert hypergeom_terminating(0, 2.3, 0.7, 0.4) == 1
    n, m, t = 2, 1, math.pi / 3
    lhs = hypergeom_terminating(n, n + 2 * m + 1, m + 1, math.cos(t / 2) ** 2)
    poch = math.gamma(m + 1 + n) / math.gamma(m + 1)
    rhs = (-1) ** n * math.factorial(n) / poch * jacobi_poly(n, m, m, math.cos(t))
    assert lhs == pytest.approx(rhs, rel=1e-14)


def test_hypergeom_exact_sum():
    b, c, x = Fraction(5, 2), Fraction(3, 2), Fraction(7, 10)
    exact = sum(
        Fraction(math.comb(3, k)) * (-1) ** k * _poch(b, k) / _poch(c, k) * x**k for k in range(4)
    )
    assert hypergeom_terminating(3, b, c, x) == exact
    assert hypergeom_terminating(3, 2.5, 1.5, 0.7) == pytest.approx(float(exact), rel=1e-15)
    assert hypergeom_terminating(3, 2.5, 1.5, 0.7) == pytest.approx(sc.hyp2f1(-3, 2.5, 1.5, 0.7), rel=1e-13)


def test_hypergeom_rejects_reachable_pole():
    with pytest.raises(ValueError):
        hypergeom_terminating(3, 1.0, -1, 0.5)
    # terminates before the offending denominator
    assert hypergeom_terminating(1, 1.0, -1, 0.5) == pytest.approx(1 + 0.5)


def _poch(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out
