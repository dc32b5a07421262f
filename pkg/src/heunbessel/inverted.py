"""Quasi-exactly solvable inverted potential.

    psi'' + [E + (b^2/4) sinh^2 u + (l^2 - 1/4) / cosh^2 u] psi = 0,
    b > 0, l = 1, 2, 3, ...

With z = -sinh^2 u and psi = cosh(u)^(1/2 - l) U(z) this becomes the
reduced confluent Heun equation with z0 = 1, B1 = -1/2, B2 = 3/2 - l,
q = -b^2/16.  Finite series (sets 1 and 2) give l doubly degenerate levels
in closed algebraic form; infinite series (sets 3, 4 and 7, 8) give further
levels through a continued fraction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import spectral
from .che import CheParams, RecurrenceCoeffs, SolutionSet, coefficients
from .errors import SymmetrizationWarning, ToleranceError
from .spectral import BenderDunneSeq, Spectrum, Tridiag, bender_dunne, degeneracy_check
from .specfun import bessel_j_scaled_sequence

__all__ = [
    "InvPotProblem",
    "QesResult",
    "map_params",
    "qes_spectrum",
    "finite_eigenfunction",
    "infinite_spectrum",
    "infinite_eigenfunction",
    "infinite_coefficients",
    "infinite_recurrence",
    "finite_recurrence",
    "qes_matrix",
    "potential_term",
    "sample",
]

_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class InvPotProblem:
    b: float
    l: int

    def __post_init__(self):
        if not (isinstance(self.l, (int, np.integer)) and self.l >= 1):
            raise ValueError("l must be a positive integer")
        if not self.b > 0:
            raise ValueError("b must be positive")

    def E_l(self, energy: float) -> float:
        """Shifted eigenparameter of the finite-series recurrences."""
        return energy / 4 - self.b**2 / 32 + (self.l / 2 - 0.25) ** 2

    def energy(self, E_l: float) -> float:
        return 4 * (E_l + self.b**2 / 32 - (self.l / 2 - 0.25) ** 2)

    # shift constants and sub-diagonals of the two finite recurrences, exact
    def _b2(self):
        return Fraction(self.b) ** 2

    def k(self, n: int, odd: bool = False):
        l, b2 = self.l, self._b2()
        if odd:
            return Fraction(n - l + 1) * Fraction(2 * n + 1, 2) + b2 * (2 * l + 1) * (2 * l - 1) / (
                32 * (4 * n + 1 - 2 * l) * (4 * n + 5 - 2 * l)
            )
        return n * Fraction(2 * n - 2 * l + 1, 2) + b2 * (2 * l + 1) * (2 * l - 1) / (
            32 * (4 * n - 1 - 2 * l) * (4 * n + 3 - 2 * l)
        )

    def gamma(self, n: int, odd: bool = False):
        l, b2 = self.l, self._b2()
        if odd:
            return (
                b2**2
                / 64
                * n
                * (2 * n + 1)
                * (2 * n - 2 * l + 1)
                * (n - l)
                / ((4 * n - 1 - 2 * l) * (4 * n + 3 - 2 * l) * (4 * n + 1 - 2 * l) ** 2)
            )
        return (
            b2**2
            / 64
            * n
            * (2 * n - 1)
            * (2 * n - 2 * l - 1)
            * (n - l)
            / ((4 * n + 1 - 2 * l) * (4 * n - 3 - 2 * l) * (4 * n - 1 - 2 * l) ** 2)
        )


def potential_term(prob: InvPotProblem, energy: float):
    """W(u) in psi'' + W(u) psi = 0."""
    return lambda u: energy + prob.b**2 / 4 * math.sinh(u) ** 2 + (prob.l**2 - 0.25) / math.cosh(u) ** 2


def map_params(prob: InvPotProblem, energy: float) -> CheParams:
    """Equation constants for energy ``energy``; z = -sinh^2 u, psi = cosh^(1/2-l) U."""
    l, b = prob.l, prob.b
    return CheParams(
        z0=1.0,
        B1=-0.5,
        B2=1.5 - l,
        B3=energy / 4 - b**2 / 16 + (l / 2 - 0.25) ** 2,
        q=-(b**2) / 16,
    )


# ---------------------------------------------------------------------------
# Finite series
# ---------------------------------------------------------------------------


def finite_recurrence(prob: InvPotProblem, odd: bool):
    """E_l -> recurrence P_{n+1} + beta_n P_n + gamma_n P_{n-1} = 0."""
    k = lru_cache(maxsize=None)(lambda n: float(prob.k(n, odd)))
    g = lru_cache(maxsize=None)(lambda n: float(prob.gamma(n, odd)))

    def build(E):
        return RecurrenceCoeffs.from_callables(
            lambda n: 1.0,
            lambda n: -E - k(n),
            lambda n: g(n) if n >= 1 else 0.0,
        )

    return build


def qes_matrix(prob: InvPotProblem, odd: bool, E: float = 0.0) -> Tridiag:
    """The l x l matrix of the even (P) or odd (Q) finite recurrence at E_l = E."""
    return spectral.char_matrix(finite_recurrence(prob, odd)(E), prob.l - 1)


@dataclass(frozen=True)
class QesResult:
    energies: np.ndarray
    even_coeffs: list
    odd_coeffs: list
    degeneracy_report: dict
    even_spectrum: Spectrum
    odd_spectrum: Spectrum
    bender_dunne_even: BenderDunneSeq
    bender_dunne_odd: BenderDunneSeq


def qes_spectrum(prob: InvPotProblem) -> QesResult:
    """The l quasi-exactly solvable energies with P_n, Q_n at each of them.

    Both l x l matrices are diagonalized independently; the reported
    energies come from the even one and the odd spectrum must agree.
    The degeneracy report compares the two determinants at E_l = 0 and at
    each computed level shifted by one, and checks the element reversal.
    """
    l = prob.l
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SymmetrizationWarning)
        even = spectral.finite_eigenvalues(finite_recurrence(prob, False), l - 1)
        odd = spectral.finite_eigenvalues(finite_recurrence(prob, True), l - 1)
    ev, od = np.asarray(even.values), np.asarray(odd.values)
    if np.iscomplexobj(ev) or np.iscomplexobj(od):
        raise ToleranceError("QES levels came out complex")
    if l > 1 and not (np.all(np.diff(ev) > 0) and np.all(np.diff(od) > 0)):
        raise ToleranceError("QES levels are not distinct")

    reports = []
    for E in [0.0, *(ev + 1.0)]:
        reports.append(degeneracy_check(qes_matrix(prob, False, E), qes_matrix(prob, True, E)))
    spread = float(np.max(np.abs(ev - od) / np.maximum(1.0, np.abs(ev)))) if l else 0.0
    report = {
        "detA": reports[0]["detA"],
        "detB": reports[0]["detB"],
        "match": all(r["match"] for r in reports),
        "identity_ok": all(r["identity_ok"] for r in reports),
        "max_spectrum_gap": spread,
        "real_distinct": True,
        "symmetrized": bool(even.symmetrized),
    }

    bd_e = bender_dunne(lambda n: prob.k(n, False), lambda n: prob.gamma(n, False), l + 2)
    bd_o = bender_dunne(lambda n: prob.k(n, True), lambda n: prob.gamma(n, True), l + 2)
    P = [_poly_values(bd_e, E, l) for E in ev]
    Q = [_poly_values(bd_o, E, l) for E in ev]
    energies = np.array([prob.energy(E) for E in ev])
    return QesResult(energies, P, Q, report, even, odd, bd_e, bd_o)


def _poly_values(seq: BenderDunneSeq, E: float, l: int) -> np.ndarray:
    return np.array([seq.evaluate(n, E)[0] for n in range(l)])


def _closure(prob: InvPotProblem, E: float, odd: bool) -> np.ndarray:
    """P_0..P_{l-1} at E_l = E, checking P_l(E) = 0."""
    l = prob.l
    k = [float(prob.k(n, odd)) for n in range(l)]
    g = [float(prob.gamma(n, odd)) for n in range(l)]
    P = np.zeros(l + 1)
    P[0] = 1.0
    scale = 0.0
    for n in range(l):
        prev = P[n - 1] if n else 0.0
        t1, t2 = (E + k[n]) * P[n], (g[n] * prev if n else 0.0)
        P[n + 1] = t1 - t2
        scale = max(scale, abs(t1) + abs(t2))
    if abs(P[l]) > 1e-8 * max(scale, 1.0):
        raise ToleranceError(f"energy is not a quasi-exactly solvable level (P_l = {P[l]:.3e})")
    return P[:l]


def _finite_weights(prob: InvPotProblem, P: np.ndarray, odd: bool) -> np.ndarray:
    """(-1)^n (4/b)^(2n) Gamma(2n - l + 3/2 [+1]) P_n / (n! Gamma(n + 1/2 [+1]))."""
    l, b = prob.l, prob.b
    d = 1.0 if odd else 0.0
    w = np.empty(l)
    for n in range(l):
        w[n] = (
            (-1) ** n
            * (4 / b) ** (2 * n)
            * math.gamma(2 * n - l + 1.5 + d)
            * P[n]
            / (math.factorial(n) * math.gamma(n + 0.5 + d))
        )
    return w


def finite_eigenfunction(prob: InvPotProblem, energy: float, parity: str, u):
    """psi_1 (even or odd) at ``u`` (scalar or array), unnormalized.

    The terms are summed as tanh(u)^(l-1/2) J_nu(x) with x = (b/2) sinh u,
    rewritten as (4/(b cosh u))^(l-1/2) times an entire function of x, so
    the value is real and finite for every real u, including u <= 0.
    """
    odd = _parity(parity)
    E = prob.E_l(energy)
    P = _closure(prob, E, odd)
    w = _finite_weights(prob, P, odd)
    l, b = prob.l, prob.b
    nu0 = -l + 0.5 + (1.0 if odd else 0.0)

    def one(uu):
        x = b / 2 * math.sinh(uu)
        terms = bessel_j_scaled_sequence(nu0, l, x, 2).real
        pre = (4 / (b * math.cosh(uu))) ** (l - 0.5)
        # (x/2)^(1) survives for the odd family: tanh^(l-1/2) (x/2)^(nu0) = pre * (x/2)^(odd)
        return pre * (x / 2 if odd else 1.0) * float(np.dot(w, terms))

    return _vectorize(one, u)


# ---------------------------------------------------------------------------
# Infinite series
# ---------------------------------------------------------------------------

# psi_2 uses sets 3 (odd) and 4 (even); psi_3 uses sets 7 (odd) and 8 (even)
_SETS = {("psi2", True): 3, ("psi2", False): 4, ("psi3", True): 7, ("psi3", False): 8}


def _set_for(series: str, odd: bool) -> SolutionSet:
    try:
        return SolutionSet(_SETS[(series, odd)])
    except KeyError:
        raise ValueError(f"series must be 'psi2' or 'psi3', got {series!r}") from None


def infinite_recurrence(prob: InvPotProblem, series: str, parity: str):
    """energy -> recurrence coefficients of the chosen infinite family."""
    S = _set_for(series, _parity(parity))
    return lambda energy: coefficients(S, map_params(prob, energy))


def infinite_spectrum(
    prob: InvPotProblem,
    window: tuple[float, float] | None = None,
    series: str = "psi2",
    parity: str | None = None,
) -> list[tuple[float, str, float, int]]:
    """Infinite-series levels in ``window`` as (energy, parity, residual, truncation).

    Both parities are searched unless ``parity`` is given.  The default
    window is 10 below the lowest to 10 above the highest QES level.
    """
    if window is None:
        e = qes_spectrum(prob).energies
        window = (float(e[0]) - 10.0, float(e[-1]) + 10.0)
    lo, hi = window
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("window must be a finite interval")
    out = []
    for par in ([parity] if parity else ["even", "odd"]):
        spec = spectral.cf_eigenvalues(infinite_recurrence(prob, series, par), window=(lo, hi), N0=80)
        for v, r in zip(spec.values, spec.residuals):
            out.append((float(v), par, float(r), spec.truncation))
    out.sort()
    return out


def infinite_coefficients(prob: InvPotProblem, energy: float, series: str, parity: str) -> np.ndarray:
    """Minimal-solution coefficients b_0.. with the tail below _TAIL_TOL."""
    return _infinite_coefficients(prob, float(energy), series, parity).copy()


@lru_cache(maxsize=256)
def _infinite_coefficients(prob: InvPotProblem, energy: float, series: str, parity: str) -> np.ndarray:
    c = infinite_recurrence(prob, series, parity)(energy)
    N = 40
    while True:
        b = spectral.solve_coefficients(c, N=N)
        mags = np.abs(b)
        top = mags.max()
        small = np.nonzero(mags[1:] < _TAIL_TOL * 1e-4 * top)[0]
        if small.size:
            cut = small[0] + 2
            return b[:cut]
        N *= 2
        if N > 5000:
            return b


def infinite_eigenfunction(prob: InvPotProblem, energy: float, series: str, parity: str, u):
    """psi_2 or psi_3 at ``u`` (scalar or array), unnormalized.

    psi_2: tanh(u)^(-l-1/2) sum (-1)^n b_n J_{2n+l+1/2+d}((b/2) sinh u)
    psi_3: tanh(u)^d sum (-1)^n b_n J_{2n+l+1/2+d}((b/2) cosh u)
    with d = 1 for the odd and 0 for the even member; the b_n come from the
    recurrence of the matching solution set.
    """
    odd = _parity(parity)
    b_n = infinite_coefficients(prob, energy, series, parity)
    signs = (-1.0) ** np.arange(b_n.size)
    l, b = prob.l, prob.b
    nu0 = l + 0.5 + (1.0 if odd else 0.0)
    w = signs * b_n

    if series == "psi2":

        def one(uu):
            x = b / 2 * math.sinh(uu)
            terms = bessel_j_scaled_sequence(nu0, w.size, x, 2).real
            # tanh^(-l-1/2) (x/2)^(nu0) = (b cosh u / 4)^(l+1/2) (x/2)^d
            pre = (b * math.cosh(uu) / 4) ** (l + 0.5)
            return pre * (x / 2 if odd else 1.0) * float(np.dot(w, terms))

    else:

        def one(uu):
            x = b / 2 * math.cosh(uu)
            terms = bessel_j_scaled_sequence(nu0, w.size, x, 2).real * (x / 2) ** nu0
            return (math.tanh(uu) if odd else 1.0) * float(np.dot(w, terms))

    return _vectorize(one, u)


# ---------------------------------------------------------------------------


def sample(values: np.ndarray) -> np.ndarray:
    """Scale samples to max-norm 1 (sign fixed by the largest entry)."""
    values = np.asarray(values, dtype=float)
    k = int(np.argmax(np.abs(values)))
    return values / values[k] if values[k] else values


def _parity(parity: str) -> bool:
    if parity in ("odd", "o"):
        return True
    if parity in ("even", "e"):
        return False
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def _vectorize(fn, u):
    if np.ndim(u) == 0:
        return fn(float(u))
    return np.array([fn(float(x)) for x in np.asarray(u, dtype=float)])
