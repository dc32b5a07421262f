"""Mathieu and modified Mathieu equations.

    w'' + s^2 [a - 2 k^2 cos(2 s u)] w = 0,   s = 1 (Mathieu) or s = i (modified)

With z = cos^2(s u) this is the reduced confluent Heun equation with
z0 = 1, B1 = -1/2, B2 = 1, B3 = k^2/2 - a/4, q = k^2.  Set 1 then gives
w1 = sum (-1)^n b_n Z_{2n}(2k cos su) and set 5 gives
w5 = sum b_n Z_{2n}(2ki sin su) with the same b_n.  The characteristic
values reachable this way are those of the even pi-periodic solutions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import spectral
from .che import CheParams, SolutionSet, coefficients
from .convergence import domain
from .errors import DomainWarning
from .spectral import Spectrum
from .specfun import BesselKind, bessel, bessel_j_scaled_sequence, bessel_ratio

__all__ = [
    "MathieuProblem",
    "map_params",
    "recurrence",
    "characteristic_values",
    "series_coefficients",
    "solution",
    "mathieu_terms",
    "solution_domain",
]

EIG_TOL = 1e-10
_TAIL = 1e-18
_MAX_TERMS = 4000


@dataclass(frozen=True)
class MathieuProblem:
    """q = k^2; sigma is "real" (s = 1) or "modified" (s = i).  ``a`` is optional."""

    k: float
    sigma: str = "real"
    a: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.k):
            raise ValueError("k must be finite")
        if self.sigma not in ("real", "modified"):
            raise ValueError(f"sigma must be 'real' or 'modified', got {self.sigma!r}")

    @property
    def modified(self) -> bool:
        return self.sigma == "modified"

    @property
    def q(self) -> float:
        return self.k * self.k


def map_params(p: MathieuProblem, a: float) -> CheParams:
    return CheParams(z0=1.0, B1=-0.5, B2=1.0, B3=p.k**2 / 2 - a / 4, q=p.k**2)


def recurrence(p: MathieuProblem, family: str = "w1"):
    """a -> set-1 (w1) or set-5 (w5) recurrence."""
    S = SolutionSet(_family_set(family))
    return lambda a: coefficients(S, map_params(p, a))


def characteristic_values(k: float, count: int, family: str = "w1") -> Spectrum:
    """Lowest ``count`` characteristic values a for q = k^2, ascending."""
    if k == 0:
        raise ValueError("k = 0 makes q = 0; the expansion degenerates")
    if count < 1:
        raise ValueError("count must be >= 1")
    return spectral.cf_eigenvalues(recurrence(MathieuProblem(k), family), count=count, tol=EIG_TOL)


def series_coefficients(p: MathieuProblem, a: float, family: str = "w1") -> np.ndarray:
    """b_n of the chosen family at characteristic value a (b_0 = 1)."""
    return _series_coefficients(p.k, float(a), _family_set(family)).copy()


@lru_cache(maxsize=256)
def _series_coefficients(k: float, a: float, i: int) -> np.ndarray:
    c = coefficients(SolutionSet(i), map_params(MathieuProblem(k), a))
    N = 40 + int(2 * abs(k))
    while True:
        b = spectral.solve_coefficients(c, N=N)
        mags = np.abs(b)
        small = np.nonzero(mags[1:] < _TAIL * mags.max())[0]
        if small.size:
            return b[: small[0] + 2]
        N *= 2


def mathieu_terms(p: MathieuProblem, a: float):
    """(P, Q) of w'' + P w' + Q w = 0 for real u."""
    if p.modified:
        return lambda u: (0.0, -(a - 2 * p.q * math.cosh(2 * u)))
    return lambda u: (0.0, a - 2 * p.q * math.cos(2 * u))


def _argument(p: MathieuProblem, family: str, u: float) -> complex:
    if family == "w1":
        return 2 * p.k * (math.cosh(u) if p.modified else math.cos(u))
    # 2 k i sin(s u) with sin(i u) = i sinh u; the root sqrt(z - 1) is taken
    # as +sinh u so the second-kind functions stay on the real axis
    return 2 * p.k * math.sinh(u) if p.modified else 2j * p.k * math.sin(u)


def solution_domain(p: MathieuProblem, family: str = "w1", j=BesselKind.J):
    """Convergence description of the chosen family and kind."""
    S = SolutionSet(_family_set(family), j)
    return domain(S, map_params(p, 0.0))


def solution(p: MathieuProblem, a: float, family: str = "w1", j=BesselKind.J, u=0.0):
    """w1 or w5 of kind j at ``u`` (scalar or array).

    The set-5 coefficients are generated from their own recurrence; with
    these parameters they equal (-1)^n times the set-1 ones, so w5 is
    summed as sum b5_n (-1)^n Z_{2n} per the sign law of set 5.  Y/H sums
    outside their convergence domain warn and return NaN.
    """
    family = family.lower()
    _family_set(family)
    j = BesselKind.coerce(j)
    b = series_coefficients(p, a, family)
    signs = (-1.0) ** np.arange(b.size)
    w = signs * b
    dom = solution_domain(p, family, j) if j is not BesselKind.J else None

    def one(uu):
        x = _argument(p, family, uu)
        if dom is not None:
            z = (math.cosh(uu) ** 2) if p.modified else math.cos(uu) ** 2
            if dom.contains(z) is False:
                warnings.warn(f"u = {uu} lies outside the convergence domain ({dom.describe()})", DomainWarning, stacklevel=3)
        if j is BesselKind.J:
            # nu0 = 0: the scaled sequence is J itself
            zs = bessel_j_scaled_sequence(0.0, b.size, x, 2)
            val = complex(np.dot(w, zs))
            # real for real u; the imaginary part is rounding
            return val.real
        return _second_kind_sum(p.k, float(a), _family_set(family), j, complex(x))

    if np.ndim(u) == 0:
        return one(float(u))
    return np.array([one(float(v)) for v in np.asarray(u, dtype=float)])


def _second_kind_sum(k: float, a: float, i: int, j: BesselKind, x: complex) -> complex:
    """sum (-1)^n b_n Z_{2n}(x) for Y/H, summed through term ratios.

    b_n decays like 1/(n!)^2 while Z_{2n} grows like (2n)!, so the series
    converges only geometrically near the domain edge and needs far more
    terms than the J sum; ratios keep both factors in range.
    """
    c = coefficients(SolutionSet(i), map_params(MathieuProblem(k), a))
    N = 60
    while True:
        rb = spectral.minimal_ratios(c, N)
        rz = bessel_ratio(j, 0.0, x, 2 * N)
        steps = -rb[1:] * rz[0::2] * rz[1::2]
        if abs(steps[-1]) >= 1:
            # outside the convergence domain the terms grow without bound
            return complex(math.nan, math.nan)
        terms = np.concatenate(([1.0 + 0j], np.cumprod(steps)))
        total = terms.sum()
        if abs(terms[-1]) <= 1e-17 * abs(total) or N >= _MAX_TERMS:
            return complex(bessel(j, 0.0, x) * total)
        N *= 2


def _family_set(family: str) -> int:
    f = family.lower()
    if f == "w1":
        return 1
    if f == "w5":
        return 5
    raise ValueError(f"family must be 'w1' or 'w5', got {family!r}")
