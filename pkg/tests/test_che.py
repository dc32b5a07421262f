import cmath
import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.special import gammaln, jv

from heunbessel import spectral
from heunbessel.che import (
    CheParams,
    RecurrenceForm,
    SolutionSet,
    che_residual,
    coefficients,
    evaluate_solution,
    termination,
    transform,
    validity,
)
from heunbessel.errors import BranchError, DomainWarning, ValidityError
from heunbessel.inverted import InvPotProblem
from heunbessel.inverted import map_params as inv_params
from heunbessel.specfun import bessel_half_integer

GENERIC = dict(z0=1.0, B1=-0.3, B2=1.7, q=2.0)


def mathieu_params(k, a):
    return CheParams(1.0, -0.5, 1.0, k * k / 2 - a / 4, k * k)


def eigen_setup(i):
    """Lowest B3 making set i's series minimal, with its coefficients."""
    build = lambda B3: coefficients(SolutionSet(i), CheParams(B3=B3, **GENERIC))
    B3 = float(spectral.cf_eigenvalues(build, count=1).values[0])
    p = CheParams(B3=B3, **GENERIC)
    return p, spectral.solve_coefficients(build(B3), N=60)


def test_params_reject_q_zero():
    with pytest.raises(ValueError):
        CheParams(1, 0, 1, 0, 0)


def test_params_store_real():
    p = CheParams(1 + 0j, -0.5, 1, 0.25, 1)
    assert isinstance(p.z0, float)
    assert p.r == -0.5 and p.s == 0.0


def test_transform_t1_mathieu():
    res = transform(mathieu_params(1.0, 1.0), "T1")
    assert res.constants["C2"] == pytest.approx(2.0)
    assert res.prefactor.a == pytest.approx(0.5)


def test_transform_t3_involution():
    p = CheParams(1.3, -0.4, 0.9, 0.2, -0.7)
    back = transform(transform(p, "T3").params, "T3").params
    for name in ("z0", "B1", "B2", "B3", "q"):
        assert getattr(back, name) == pytest.approx(getattr(p, name), rel=1e-15, abs=1e-15)


def test_transform_t2_dipole():
    for m in range(4):
        p = CheParams(1.0, -m - 1, 2 * m + 2, 0.3, -2.0)
        assert transform(p, "T2").constants["D2"] == pytest.approx(2.0)


def test_transform_needs_z0():
    p = CheParams(0.0, -0.4, 0.9, 0.2, 1.0)
    for rule in ("T1", "T2"):
        with pytest.raises(ZeroDivisionError):
            transform(p, rule)
    assert transform(p, "T3").variable == "z0-z"


def test_mathieu_first_row():
    # R2 form and q b1 - a b0 = 0
    k, a = 1.3, 0.7
    c = coefficients(SolutionSet(1), mathieu_params(k, a))
    assert c.form is RecurrenceForm.R2
    alpha0, beta0, _ = c.row(0)
    assert beta0 / alpha0 == pytest.approx(-a / (k * k), rel=1e-14)


@pytest.mark.parametrize("i,B2,form", [(1, 2.0, RecurrenceForm.R3), (3, 3.0, RecurrenceForm.R2), (1, 1.7, RecurrenceForm.R1)])
def test_forms(i, B2, form):
    c = coefficients(SolutionSet(i), CheParams(1.0, -0.3, B2, 0.1, 2.0))
    assert c.form is form


def test_subgroup_identity_random():
    rng = np.random.default_rng(7)
    n = np.arange(51)
    checked = 0
    for _ in range(100):
        z0 = rng.uniform(0.3, 3.0) * rng.choice([-1, 1])
        p = CheParams(z0, rng.uniform(-3, 3), rng.uniform(-3, 6), rng.uniform(-5, 5), rng.uniform(-4, 4))
        for i in range(1, 5):
            try:
                A = coefficients(SolutionSet(i), p).rows(51)
                B = coefficients(SolutionSet(i + 4), p).rows(51)
            except ValidityError:
                continue
            scale_b = np.abs(A[1][:51]) + 1
            assert np.all(np.abs(A[1][:51] - B[1][:51]) <= 1e-13 * scale_b)
            pa, pb = A[0][n] * A[2][n + 1], B[0][n] * B[2][n + 1]
            assert np.all(np.abs(pa - pb) <= 1e-12 * (np.abs(pa) + 1e-300))
            checked += 1
    assert checked > 300


def test_product_identity_sets_1_5():
    p = CheParams(B3=0.4, **GENERIC)
    a1, g1 = coefficients(SolutionSet(1), p), coefficients(SolutionSet(5), p)
    assert a1.alpha(0) * a1.gamma(1) == pytest.approx(g1.alpha(0) * g1.gamma(1), rel=1e-14)


def test_coefficient_relation_sets_1_5():
    p, b1 = eigen_setup(1)
    _, b5 = eigen_setup(5)
    r = p.r
    n = np.arange(len(b1))
    w = (-1.0) ** n * np.exp(gammaln(n - r) - gammaln(n + p.B2 + r))
    pred = w * b1
    mask = np.abs(b5) > 1e-200
    ratio = b5[mask] / pred[mask]
    assert np.ptp(ratio[:30]) <= 1e-8 * abs(ratio[0])


def test_validity_examples():
    assert not validity(SolutionSet(1), CheParams(1, -0.3, -1, 0, 1)).ok
    assert validity(1, inv_params(InvPotProblem(2.0, 1), 0.3)).ok
    rep = validity(SolutionSet(3), CheParams(1, -0.3, 5, 0, 1))
    assert not rep and "4" in rep.reason
    with pytest.raises(ValidityError):
        coefficients(SolutionSet(3), CheParams(1, -0.3, 5, 0, 1))


def test_validity_z0_zero():
    p = CheParams(0.0, -2.0, 1.5, 0.3, 3.0)
    assert validity(1, p).ok and validity(3, p).ok
    assert not validity(2, p).ok


def test_termination_inverted():
    p = inv_params(InvPotProblem(1.0, 3), 0.37)
    assert termination(coefficients(SolutionSet(1), p)).right_stop == 2
    for i in (5, 6):
        assert termination(coefficients(SolutionSet(i), p)).left_start == 3


def test_termination_generic():
    t = termination(coefficients(SolutionSet(1), CheParams(B3=0.4, **GENERIC)), nmax=500)
    assert t.right_stop is None and t.left_start is None


def test_evaluate_leading_mathieu_term():
    k = 1.2
    p = mathieu_params(k, 0.3)
    for u in (0.1, 0.7, 1.3):
        z = math.cos(u) ** 2
        got = evaluate_solution(SolutionSet(1), p, [1.0], z)
        assert got.real == pytest.approx(jv(0, 2 * k * math.cos(u)), rel=1e-13)


def test_evaluate_half_integer_path():
    p = inv_params(InvPotProblem(2.0, 2), 0.5)
    b = [1.0, -0.3, 0.02]
    z = 2.3
    got = evaluate_solution(SolutionSet(1), p, b, z)
    x = 2 * cmath.sqrt(p.q * z)
    pre = z ** ((1 - p.B2) / 2)
    ref = sum((-1) ** n * b[n] * bessel_half_integer(2 * n + p.B2 - 1, x) for n in range(3)) * pre
    assert abs(got - ref) <= 1e-13 * abs(ref)


def test_branch_required_for_negative_real():
    p = CheParams(B3=0.4, **GENERIC)
    with pytest.raises(BranchError):
        evaluate_solution(SolutionSet(1), p, [1.0], -0.5)
    assert evaluate_solution(SolutionSet(1), p, [1.0], -0.5, branch="principal") != 0


def test_domain_warning():
    p, b = eigen_setup(1)
    with pytest.warns(DomainWarning):
        evaluate_solution(SolutionSet(1, "Y"), p, b[:5], 0.5)


@pytest.mark.parametrize("i", range(1, 9))
def test_ode_residual_all_sets(i):
    p, b = eigen_setup(i)
    U = lambda z: evaluate_solution(SolutionSet(i), p, b, z, branch="principal")
    for z in (0.4 + 0.3j, 1.7 - 0.2j, 2.5 + 1.0j, -0.8 + 0.5j):
        assert abs(che_residual(p, U, z, h=1e-3)) < 1e-6


def test_pair_eigenvalues_coincide():
    for i in range(1, 5):
        assert eigen_setup(i)[0].B3 == pytest.approx(eigen_setup(i + 4)[0].B3, rel=1e-10, abs=1e-12)


def test_against_numerical_integration():
    p, b = eigen_setup(1)
    U = lambda z: evaluate_solution(SolutionSet(1), p, b, z).real
    z0, h = 0.3, 1e-3
    d1 = (U(z0 - 2 * h) - 8 * U(z0 - h) + 8 * U(z0 + h) - U(z0 + 2 * h)) / (12 * h)

    def rhs(z, y):
        u, du = y
        d2 = -((p.B1 + p.B2 * z) * du + (p.B3 + p.q * (z - p.z0)) * u) / (z * (z - p.z0))
        return [du, d2]

    zs = np.linspace(0.3, 0.9, 50)
    sol = solve_ivp(rhs, (0.3, 0.9), [U(z0), d1], t_eval=zs, method="DOP853", rtol=1e-12, atol=1e-14)
    ref = np.array([U(z) for z in zs])
    assert np.max(np.abs(sol.y[0] - ref)) <= 1e-6 * np.max(np.abs(ref))


@pytest.mark.parametrize("kind,sign", [("H1", 1), ("H2", -1)])
def test_hankel_asymptotics(kind, sign):
    p, b = eigen_setup(1)
    S = SolutionSet(1, kind)

    def ratio(z):
        U = evaluate_solution(S, p, b, z)
        tag = cmath.exp(sign * 2j * cmath.sqrt(p.q * z)) * z ** (0.25 - p.B2 / 2)
        return U / tag

    r0 = ratio(1e4)
    for z in (1.0e4 + 37.0, 1.0e4 * cmath.exp(0.01j), 1.2e4):
        assert abs(ratio(z) / r0 - 1) < 0.01
