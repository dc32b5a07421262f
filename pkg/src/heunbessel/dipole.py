"""Angular equation of an electron in the field of a point electric dipole.

    (1/sin t) d/dt (sin t dT/dt) + [C - beta cos t - m^2 / sin^2 t] T = 0

With T = sin(t)^m U(z), z = sin^2(t/2), this is the reduced confluent Heun
equation with z0 = 1, B1 = -m-1, B2 = 2m+2, B3 = m(m+1) - beta - C and
q = -2 beta.  The separation constants C come from one three-term
recurrence shared by two Bessel-series forms and a Jacobi-series form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import spectral
from .che import CheParams, RecurrenceCoeffs, SolutionSet, coefficients, validity
from .spectral import Spectrum
from .specfun import assoc_legendre, bessel_j_scaled_sequence, jacobi_table

__all__ = [
    "DipoleProblem",
    "map_params",
    "recurrence",
    "explicit_recurrence",
    "admissible_sets",
    "angular_eigenvalues",
    "series_coefficients",
    "theta_bessel",
    "theta_jacobi",
    "theta_legendre",
    "legendre_limit",
    "angular_terms",
]

EIG_TOL = 1e-10
_TAIL = 1e-18


@dataclass(frozen=True)
class DipoleProblem:
    m: int
    beta: float

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and self.m >= 0):
            raise ValueError("m must be a non-negative integer")
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")


def map_params(prob: DipoleProblem, C: float) -> CheParams:
    """Equation constants at separation constant C (beta = 0 is rejected: q = 0)."""
    m, beta = prob.m, prob.beta
    return CheParams(z0=1.0, B1=-m - 1.0, B2=2.0 * m + 2, B3=m * (m + 1) - beta - C, q=-2.0 * beta)


def angular_terms(prob: DipoleProblem, C: float):
    """(P, Q) of T'' + P T' + Q T = 0 as functions of theta."""
    m, beta = prob.m, prob.beta
    return lambda t: (math.cos(t) / math.sin(t), C - beta * math.cos(t) - m * m / math.sin(t) ** 2)


def recurrence(prob: DipoleProblem):
    """C -> set-1 recurrence at the dipole parameters."""
    return lambda C: coefficients(SolutionSet(1), map_params(prob, C))


def explicit_recurrence(prob: DipoleProblem):
    """C -> the same recurrence divided by -4, in closed form."""
    m, beta = prob.m, prob.beta

    def build(C):
        return RecurrenceCoeffs.from_callables(
            lambda n: beta * (n + 1) / (2 * n + 2 * m + 3),
            lambda n: -(n * (n + 2 * m + 1) + m * (m + 1) - C),
            lambda n: beta * (n + 2 * m) / (2 * n + 2 * m - 1) if n >= 1 else 0.0,
        )

    return build


def admissible_sets(prob: DipoleProblem) -> list[int]:
    """Sets whose expansion is valid and finite at both theta = 0 and theta = pi.

    Validity is the coefficient restriction of each set.  Regularity asks the
    prefactor power at z = 0 and at z = 1, plus the Bessel leading power at
    the point where its argument vanishes, to give a bounded T for every m.
    """
    if prob.beta == 0:
        raise ValueError("beta = 0 has no Bessel expansions; use legendre_limit")
    p = map_params(prob, 0.0)
    m = prob.m
    out = []
    for i in range(1, 9):
        S = SolutionSet(i)
        if not validity(S, p).ok:
            continue
        pre = S.prefactor(p)
        nu0 = complex(S.order(p, 0)).real
        a, c = complex(pre.a).real, complex(pre.c).real
        # Bessel argument ~ sqrt(z) (sets 1-4) or sqrt(z - 1) (sets 5-8) contributes nu0/2
        if S.subgroup == 1:
            a += nu0 / 2
        else:
            c += nu0 / 2
        # sin(t)^m ~ z^(m/2) near t = 0 and (1 - z)^(m/2) near t = pi
        if a + m / 2 >= -1e-12 and c + m / 2 >= -1e-12:
            out.append(i)
    return out


def angular_eigenvalues(prob: DipoleProblem, count: int, N0: int = 40) -> Spectrum:
    """Lowest ``count`` separation constants C, sorted ascending.

    Truncated matrices from N0 doubling until the lowest values move by
    less than 1e-10; each value is then polished on the continued fraction.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if prob.beta == 0:
        vals = np.array([legendre_limit(prob.m, prob.m + k) for k in range(count)], dtype=float)
        return Spectrum(vals, "legendre-limit", 0, np.zeros(count), True)
    return spectral.cf_eigenvalues(explicit_recurrence(prob), count=count, N0=N0, tol=EIG_TOL)


def series_coefficients(prob: DipoleProblem, C: float) -> np.ndarray:
    """b_n of the minimal solution at eigenvalue C, cut where the tail is negligible."""
    return _series_coefficients(prob, float(C)).copy()


@lru_cache(maxsize=256)
def _series_coefficients(prob: DipoleProblem, C: float) -> np.ndarray:
    c = explicit_recurrence(prob)(C)
    N = 40 + int(2 * math.sqrt(abs(prob.beta)))
    while True:
        b = spectral.solve_coefficients(c, N=N)
        mags = np.abs(b)
        small = np.nonzero(mags[1:] < _TAIL * mags.max())[0]
        if small.size:
            return b[: small[0] + 2]
        N *= 2


def theta_bessel(prob: DipoleProblem, C: float, theta, variant: str = "theta2"):
    """Bessel-series solution at ``theta`` (scalar or array).

    theta2: cos(t/2)^-1 tan(t/2)^m sum b_n J_{2n+2m+1}(sqrt(8 beta) cos(t/2))
    theta1: sin(t/2)^-1 cot(t/2)^m sum (-1)^n b_n J_{2n+2m+1}(i sqrt(8 beta) sin(t/2)) / i^(2m+1)

    Each sum is evaluated as (x/2)^(2m+1) times an entire function of x^2,
    which makes both endpoints finite.  theta1 is computed in complex
    arithmetic; its imaginary part is checked to vanish.  For beta < 0
    both literal forms carry the constant phase i^(2m+1), which is dropped.
    """
    v = variant.lower().replace("θ", "theta").replace("_", "")
    if v in ("theta2", "2"):
        odd_sign, use_sin = False, False
    elif v in ("theta1", "1"):
        odd_sign, use_sin = True, True
    else:
        raise ValueError(f"variant must be 'theta1' or 'theta2', got {variant!r}")
    if prob.beta == 0:
        raise ValueError("beta = 0 has no Bessel expansions; use legendre_limit")
    m, beta = prob.m, prob.beta
    b = series_coefficients(prob, C)
    w = b * ((-1.0) ** np.arange(b.size) if odd_sign else 1.0)
    root = cmath.sqrt(8 * beta)
    scale = abs(2 * beta) ** (m + 0.5)

    def one(t):
        h = t / 2
        s, c = math.sin(h), math.cos(h)
        x = (1j * root * s) if use_sin else (root * c)
        terms = bessel_j_scaled_sequence(2 * m + 1, b.size, x, 2)
        total = complex(np.dot(w, terms))
        val = scale * (s * c) ** m * total
        if abs(val.imag) > 1e-10 * max(abs(val), 1e-300):
            raise ArithmeticError(f"Bessel-series solution has imaginary part {val.imag:.2e}")
        return val.real

    return _vectorize(one, theta)


def theta_jacobi(prob: DipoleProblem, C: float, theta):
    """sin(t)^m sum (-1)^n n!/(n+m)! b_n P_n^(m,m)(cos t)."""
    m = prob.m
    b = series_coefficients(prob, C) if prob.beta != 0 else np.array([1.0])
    n = np.arange(b.size)
    w = (-1.0) ** n * np.exp([math.lgamma(k + 1) - math.lgamma(k + m + 1) for k in n]) * b
    t = np.asarray(theta, dtype=float)
    val = np.sin(t) ** m * np.tensordot(w, jacobi_table(b.size - 1, m, m, np.cos(t)), axes=1)
    return float(val) if val.ndim == 0 else val


def theta_legendre(prob: DipoleProblem, C: float, theta):
    """sum (-1)^n n!/(n+2m)! b_n P_{n+m}^m(cos t), proportional to theta_jacobi."""
    m = prob.m
    b = series_coefficients(prob, C) if prob.beta != 0 else np.array([1.0])
    n = np.arange(b.size)
    w = (-1.0) ** n * np.exp([math.lgamma(k + 1) - math.lgamma(k + 2 * m + 1) for k in n]) * b
    x = np.cos(np.asarray(theta, dtype=float))
    val = sum(w[k] * assoc_legendre(k + m, m, x) for k in n)
    return float(val) if np.ndim(val) == 0 else np.asarray(val)


def legendre_limit(m: int, ell: int) -> int:
    """C = ell(ell + 1), the beta = 0 separation constant."""
    if m < 0 or ell < m:
        raise ValueError("need ell >= m >= 0")
    return ell * (ell + 1)


def _vectorize(fn, x):
    if np.ndim(x) == 0:
        return fn(float(x))
    return np.array([fn(float(v)) for v in np.asarray(x, dtype=float)])
