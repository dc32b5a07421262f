import math
import warnings

import numpy as np
import pytest
from scipy.special import mathieu_a

from heunbessel import spectral
from heunbessel.che import RecurrenceForm
from heunbessel.errors import DomainWarning
from heunbessel.mathieu import (
    MathieuProblem,
    characteristic_values,
    map_params,
    mathieu_terms,
    recurrence,
    series_coefficients,
    solution,
    solution_domain,
)
from heunbessel.residual import relative_residual
from heunbessel.specfun import PrecisionWarning

from checks import proportionality
from oracles import mathieu_fourier


def test_problem_checks():
    with pytest.raises(ValueError):
        MathieuProblem(1.0, "imaginary")
    with pytest.raises(ValueError):
        MathieuProblem(math.nan)
    assert MathieuProblem(1.5).q == 2.25
    assert MathieuProblem(1.0, "modified").modified


def test_map_params():
    assert map_params(MathieuProblem(1.0), 1.0).B3 == 0.25
    p = map_params(MathieuProblem(1.0), 0.0)
    assert (p.z0, p.B1, p.B2, p.q) == (1.0, -0.5, 1.0, 1.0)
    assert recurrence(MathieuProblem(1.0))(0.3).form is RecurrenceForm.R2


def test_k_zero_rejected():
    with pytest.raises(ValueError):
        characteristic_values(0.0, 3)
    with pytest.raises(ValueError):
        characteristic_values(1.0, 0)


def test_small_k_limit():
    for k in (1e-1, 1e-2, 1e-3):
        a0 = characteristic_values(k, 1).values[0]
        # a_0 = -q^2/2 + O(q^4)
        assert a0 == pytest.approx(-(k**4) / 2, abs=k**8 + 1e-14)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_fourier_oracle(q):
    got = characteristic_values(math.sqrt(q), 4).values
    np.testing.assert_allclose(got, mathieu_fourier(q, 4), rtol=0, atol=1e-8)


def test_scipy_agreement():
    q = 3.1
    got = characteristic_values(math.sqrt(q), 5).values
    ref = [mathieu_a(2 * r, q) for r in range(5)]
    np.testing.assert_allclose(got, ref, atol=1e-10)


def test_depth_doubling():
    rec = recurrence(MathieuProblem(1.0))
    for a in characteristic_values(1.0, 4).values:
        a60 = spectral.polish_root(rec, a, depth=60)
        a120 = spectral.polish_root(rec, a, depth=120)
        assert abs(a120 - a60) < 1e-10


def test_families_share_roots():
    for k in (0.7, 1.0, 2.0):
        w1 = characteristic_values(k, 4, "w1").values
        w5 = characteristic_values(k, 4, "w5").values
        np.testing.assert_allclose(w1, w5, rtol=1e-14, atol=1e-14)


def test_set5_coefficients_alternate():
    p = MathieuProblem(1.3)
    for a in characteristic_values(1.3, 3).values:
        b1 = series_coefficients(p, a, "w1")
        b5 = series_coefficients(p, a, "w5")
        n = min(b1.size, b5.size)
        np.testing.assert_allclose(b5[:n], (-1.0) ** np.arange(n) * b1[:n], rtol=1e-10, atol=1e-16)


@pytest.mark.parametrize("sigma", ["real", "modified"])
@pytest.mark.parametrize("family", ["w1", "w5"])
def test_ode_residual(sigma, family):
    k = 1.2
    p = MathieuProblem(k, sigma)
    grid = np.linspace(-1.5, 1.5, 400) if sigma == "real" else np.linspace(-1.2, 1.2, 400)
    for a in characteristic_values(k, 3).values:
        f = lambda u: solution(p, a, family, "J", u)
        assert relative_residual(f, mathieu_terms(p, a), grid) < 1e-6


@pytest.mark.parametrize("sigma", ["real", "modified"])
def test_j_families_proportional(sigma):
    p = MathieuProblem(math.sqrt(2.0), sigma)
    u = np.linspace(0.1, 1.5, 40)
    for a in characteristic_values(p.k, 3).values:
        assert proportionality(solution(p, a, "w1", "J", u), solution(p, a, "w5", "J", u)) < 1e-8


@pytest.mark.parametrize("kind", ["Y", "H1"])
def test_modified_second_kind_proportional(kind):
    # cosh u >= 1 always and sinh u >= 1 for u >= asinh(1): both series converge on [1, 2]
    p = MathieuProblem(1.0, "modified")
    u = np.linspace(1.0, 2.0, 30)
    a = characteristic_values(1.0, 1).values[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionWarning)
        w1 = solution(p, a, "w1", kind, u)
        w5 = solution(p, a, "w5", kind, u)
    assert proportionality(w1, w5) < 1e-8


def test_modified_second_kind_ode_residual():
    p = MathieuProblem(1.0, "modified")
    a = characteristic_values(1.0, 2).values[1]
    grid = np.linspace(1.0, 2.0, 60)
    for family in ("w1", "w5"):
        f = lambda u: solution(p, a, family, "Y", u).real
        assert relative_residual(f, mathieu_terms(p, a), grid) < 1e-6


def test_periodicity_and_parity():
    p = MathieuProblem(1.1)
    u = np.linspace(0, 1.5, 16)
    for a in characteristic_values(1.1, 2).values:
        w = solution(p, a, "w1", "J", u)
        np.testing.assert_allclose(solution(p, a, "w1", "J", u + math.pi), w, atol=1e-12)
        np.testing.assert_allclose(solution(p, a, "w1", "J", -u), w, atol=1e-12)


def test_domains():
    real, mod = MathieuProblem(1.0), MathieuProblem(1.0, "modified")
    for u in (0.0, 0.5, 2.0):
        assert solution_domain(mod, "w1", "Y").contains(math.cosh(u) ** 2) is not False
    assert solution_domain(real, "w1", "Y").contains(math.cos(0.5) ** 2) is False
    assert solution_domain(real, "w1", "J").contains(0.3) is True


def test_domain_warning():
    p = MathieuProblem(1.0)
    a = characteristic_values(1.0, 1).values[0]
    with pytest.warns(DomainWarning):
        value = solution(p, a, "w1", "Y", 0.7)
    # the series diverges there
    assert math.isnan(value.real)


def test_bad_family():
    with pytest.raises(ValueError):
        solution(MathieuProblem(1.0), 0.0, "w2", "J", 0.1)
