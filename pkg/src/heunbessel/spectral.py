"""Characteristic equations of three-term recurrences.

Continued-fraction residuals, truncated tridiagonal matrices, eigenvalue
extraction for finite and infinite series, minimal-solution coefficients,
Bender-Dunne polynomial sequences and the determinant comparison used for
degenerate finite-series spectra.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvals
from scipy.optimize import brentq

from .che import RecurrenceCoeffs, termination
from .errors import ConvergenceError, SymmetrizationWarning, ToleranceError

__all__ = [
    "Tridiag",
    "Spectrum",
    "BenderDunneSeq",
    "cf_residual",
    "char_matrix",
    "matrix_eigenvalues",
    "finite_eigenvalues",
    "cf_eigenvalues",
    "polish_root",
    "minimal_ratios",
    "solve_coefficients",
    "bender_dunne",
    "degeneracy_check",
]

_TINY = 1e-300
CF_TOL = 1e-12
CF_DEPTH_CAP = 20000
CLOSURE_TOL = 1e-8

CoeffsFn = Callable[[float], RecurrenceCoeffs]


@dataclass(frozen=True)
class Tridiag:
    """Tridiagonal matrix: diag b_0..b_N, super a_0..a_{N-1}, sub g_1..g_N."""

    diag: np.ndarray
    super: np.ndarray
    sub: np.ndarray

    def __post_init__(self):
        d, u, l = (np.atleast_1d(np.asarray(v)) for v in (self.diag, self.super, self.sub))
        if d.ndim != 1 or u.size != d.size - 1 or l.size != d.size - 1:
            raise ValueError("need len(super) == len(sub) == len(diag) - 1")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "super", u)
        object.__setattr__(self, "sub", l)

    @property
    def size(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.super, 1) + np.diag(self.sub, -1)

    def det(self) -> complex:
        """D_n = b_n D_{n-1} - a_{n-1} g_n D_{n-2}, rescaled against overflow."""
        d_prev, d = 1.0, self.diag[0]
        log_scale = 0.0
        for n in range(1, self.size):
            d_prev, d = d, self.diag[n] * d - self.super[n - 1] * self.sub[n - 1] * d_prev
            m = max(abs(d), abs(d_prev))
            if m > 1e100 or (0 < m < 1e-100):
                d, d_prev = d / m, d_prev / m
                log_scale += math.log(m)
        return d * math.exp(log_scale) if log_scale else d

    def offdiag_products(self) -> np.ndarray:
        return self.super * self.sub


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with provenance of how they were obtained."""

    values: np.ndarray
    method: str
    truncation: int
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    symmetrized: bool | None = None

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


# ---------------------------------------------------------------------------
# Continued fractions
# ---------------------------------------------------------------------------


def _cf_tail(coeffs: RecurrenceCoeffs, depth: int) -> complex:
    """alpha_0 gamma_1 / (beta_1 - alpha_1 gamma_2 / (beta_2 - ...)) cut at ``depth``."""
    t = 0.0
    for n in range(depth, 0, -1):
        a_prev = coeffs.row(n - 1)[0]
        _, b, g = coeffs.row(n)
        den = b - t
        if den == 0:
            den = _TINY
        t = a_prev * g / den
    return t


def cf_residual(coeffs: RecurrenceCoeffs, depth: int = 60, cap: int = CF_DEPTH_CAP) -> complex:
    """beta_0' minus the continued fraction of the recurrence (first rows folded).

    The depth is doubled until the values at ``depth`` and ``depth + 20``
    agree to CF_TOL relative; past ``cap`` a ConvergenceError is raised.
    A series that terminates (gamma_{N+1} = 0) gives an exact finite fraction.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    b0 = coeffs.row(0)[1]
    while True:
        r1 = b0 - _cf_tail(coeffs, depth)
        r2 = b0 - _cf_tail(coeffs, depth + 20)
        scale = max(abs(b0), abs(r1 - b0), 1e-300)
        if abs(r1 - r2) <= CF_TOL * scale:
            return r2
        if depth >= cap:
            raise ConvergenceError(f"continued fraction unsettled at depth {depth}: {abs(r1 - r2) / scale:.2e}")
        depth *= 2


def _normalized_residual(coeffs: RecurrenceCoeffs, depth: int, m: int = 0) -> float:
    """Characteristic residual evaluated at row ``m``, scaled by its diagonal.

    Row m is the natural place for an eigenvalue whose coefficients peak
    near index m: the first-row fraction then has a pole next to the root.
    Both fractions have the same zeros.
    """
    if m == 0:
        b0 = coeffs.row(0)[1]
        r = cf_residual(coeffs, depth)
        return (r / max(abs(b0), abs(b0 - r), 1.0)).real
    f = coeffs.row(0)[1]
    for j in range(1, m):
        a_prev = coeffs.row(j - 1)[0]
        _, b, g = coeffs.row(j)
        f = b - a_prev * g / (f if f != 0 else _TINY)
    a_prev = coeffs.row(m - 1)[0]
    _, bm, gm = coeffs.row(m)
    down = a_prev * gm / (f if f != 0 else _TINY)
    up = _cf_tail(_Rows(coeffs, m), depth)
    r = bm - down - up
    return (r / max(abs(bm), abs(down), abs(up), 1.0)).real


class _Rows:
    """View of a recurrence starting at row m (first rows left untouched)."""

    def __init__(self, coeffs: RecurrenceCoeffs, m: int):
        self.coeffs, self.m = coeffs, m

    def row(self, n):
        return self.coeffs.row(n + self.m)


def _best_row(coeffs: RecurrenceCoeffs, depth: int) -> int:
    betas = [abs(coeffs.row(n)[1]) for n in range(min(depth, 400))]
    return int(np.argmin(betas))


# ---------------------------------------------------------------------------
# Matrices and eigenvalues
# ---------------------------------------------------------------------------


def char_matrix(coeffs: RecurrenceCoeffs, N: int) -> Tridiag:
    """(N+1) x (N+1) matrix of the recurrence rows 0..N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    a, b, g = coeffs.rows(N)
    return Tridiag(b, a[:N], g[1:])


def _separate(coeffs_fn: CoeffsFn, N: int):
    """Write the truncated matrix as M0 + E * slope * I; check the affine shape."""
    m0 = char_matrix(coeffs_fn(0.0), N)
    m1 = char_matrix(coeffs_fn(1.0), N)
    slope = m1.diag - m0.diag
    s = slope[0]
    if s == 0 or not np.allclose(slope, s, rtol=1e-6, atol=0):
        raise ValueError("beta_n must depend on the eigenparameter with one common nonzero slope")
    if not (np.allclose(m0.super, m1.super) and np.allclose(m0.sub, m1.sub)):
        raise ValueError("alpha_n and gamma_n must not depend on the eigenparameter")
    return m0, s


def _eig_from(m0: Tridiag, s) -> tuple[np.ndarray, bool]:
    # det(M0 + s E I) = 0  <=>  E is an eigenvalue of -M0 / s
    diag = -m0.diag / s
    up = -m0.super / s
    lo = -m0.sub / s
    prod = up * lo
    real = not (np.iscomplexobj(diag) or np.iscomplexobj(prod))
    if m0.size == 1:
        return np.array([diag[0]]), True
    if real and np.all(prod > 0):
        vals = eigh_tridiagonal(np.asarray(diag, float), np.sqrt(np.asarray(prod, float)), eigvals_only=True)
        return np.sort(vals), True
    mat = Tridiag(diag, up, lo).dense()
    vals = eigvals(mat)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.all(np.abs(vals.imag) <= 1e-10 * scale):
        vals = vals.real
    return np.sort_complex(vals) if np.iscomplexobj(vals) else np.sort(vals), False


def _det_and_derivative(m0: Tridiag, s, E):
    """det(M0 + s E I) and its E-derivative by the three-term recursion."""
    d_prev, d = 1.0, m0.diag[0] + s * E
    dd_prev, dd = 0.0, s
    for n in range(1, m0.size):
        p = m0.super[n - 1] * m0.sub[n - 1]
        b = m0.diag[n] + s * E
        d_new = b * d - p * d_prev
        dd_new = s * d + b * dd - p * dd_prev
        d_prev, d = d, d_new
        dd_prev, dd = dd, dd_new
        m = abs(d) + abs(d_prev)
        if m > 1e100:
            d, d_prev, dd, dd_prev = d / m, d_prev / m, dd / m, dd_prev / m
    return d, dd


def _newton_polish(m0: Tridiag, s, E, steps: int = 6):
    for _ in range(steps):
        d, dd = _det_and_derivative(m0, s, E)
        if dd == 0:
            break
        step = d / dd
        E = E - step
        if abs(step) <= 1e-16 * max(1.0, abs(E)):
            break
    return E


def matrix_eigenvalues(coeffs_fn: CoeffsFn, N: int) -> Spectrum:
    """Eigenvalues of the (N+1) x (N+1) truncated recurrence matrix.

    ``coeffs_fn(E)`` builds the recurrence at eigenparameter E; beta_n must
    be affine in E with a common slope (any nonzero value, not only -1).
    """
    m0, s = _separate(coeffs_fn, N)
    vals, sym = _eig_from(m0, s)
    if not sym and not np.iscomplexobj(vals):
        vals = np.sort(np.array([_newton_polish(m0, s, v) for v in vals]).real)
    return Spectrum(np.asarray(vals), "truncated-matrix", N, symmetrized=sym)


def finite_eigenvalues(coeffs_fn: CoeffsFn, N: int) -> Spectrum:
    """The N+1 roots of a terminating recurrence (gamma_{N+1} = 0).

    When alpha_i gamma_{i+1} > 0 for every i < N the matrix is symmetrized
    and the roots are real and distinct by construction; this is checked.
    Otherwise a general eigensolver is used, ``symmetrized`` is False and a
    SymmetrizationWarning is issued only if complex roots actually appear.
    """
    c0 = coeffs_fn(0.0)
    g = c0.row(N + 1)[2]
    if g != 0:
        raise ValueError(f"gamma_{N + 1} = {g} != 0: the series does not terminate at n = {N}")
    spec = matrix_eigenvalues(coeffs_fn, N)
    vals = spec.values
    if np.iscomplexobj(vals):
        warnings.warn("finite-series roots are not all real", SymmetrizationWarning, stacklevel=2)
    elif spec.symmetrized and N > 0:
        gaps = np.diff(vals)
        if not np.all(gaps > 0):
            raise ToleranceError("symmetrized spectrum has repeated roots")
    m0, s = _separate(coeffs_fn, N)
    res = np.array([abs(_det_and_derivative(m0, s, v)[0]) for v in vals])
    return Spectrum(vals, "finite-series", N, res, spec.symmetrized)


def polish_root(coeffs_fn: CoeffsFn, estimate: float, depth: int = 60, width: float | None = None) -> float:
    """Refine a real root of the continued-fraction residual near ``estimate``.

    A bracket is grown symmetrically around the estimate until the residual
    changes sign, then Brent's method finishes.  Sign changes caused by a
    pole are rejected by checking the residual magnitude at the result.
    """
    m = _best_row(coeffs_fn(estimate), depth)
    f = lambda E: _normalized_residual(coeffs_fn(E), depth, m)
    f0 = f(estimate)
    if f0 == 0:
        return float(estimate)
    h = width if width is not None else 1e-10 * max(1.0, abs(estimate))
    for _ in range(40):
        lo, hi = estimate - h, estimate + h
        flo, fhi = f(lo), f(hi)
        if flo == 0:
            return float(lo)
        if fhi == 0:
            return float(hi)
        if flo * fhi < 0:
            root = brentq(f, lo, hi, xtol=1e-15 * max(1.0, abs(estimate)), rtol=4 * np.finfo(float).eps)
            if abs(f(root)) < 1e-6:
                return float(root)
            raise ConvergenceError(f"sign change near {estimate} is a pole, not a root")
        h *= 4
    raise ConvergenceError(f"no sign change of the characteristic residual near {estimate}")


def cf_eigenvalues(
    coeffs_fn: CoeffsFn,
    count: int | None = None,
    window: tuple[float, float] | None = None,
    N0: int = 40,
    tol: float = 1e-10,
    max_N: int = 2560,
) -> Spectrum:
    """Eigenvalues of an infinite recurrence, lowest ``count`` or inside ``window``.

    Truncated matrices at N and 2N are compared; doubling continues until
    the selected values move less than ``tol`` (relative to max(1, |E|)).
    The converged values are then polished as roots of the continued
    fraction and reported with their residuals.
    """
    if (count is None) == (window is None):
        raise ValueError("give exactly one of count or window")
    if count is not None and count < 1:
        raise ValueError("count must be >= 1")

    def select(vals):
        vals = np.asarray(vals)
        if np.iscomplexobj(vals):
            scale = np.maximum(1.0, np.abs(vals))
            vals = vals[np.abs(vals.imag) <= 1e-8 * scale].real
        if count is not None:
            # "lowest" means nearest the low-index rows of the recurrence
            return np.sort(vals)[:count] if rising else np.sort(vals)[::-1][:count]
        lo, hi = window
        return np.sort(vals[(vals >= lo) & (vals <= hi)])

    N = max(N0, (count or 0) + 10)
    m0, s = _separate(coeffs_fn, N)
    d = (-m0.diag / s).real
    rising = d[-1] >= d[0]
    prev = select(matrix_eigenvalues(coeffs_fn, N).values)
    while True:
        N2 = 2 * N
        cur = select(matrix_eigenvalues(coeffs_fn, N2).values)
        if len(cur) == len(prev) and (len(cur) == 0 or np.all(np.abs(cur - prev) <= tol * np.maximum(1.0, np.abs(cur)))):
            break
        if N2 >= max_N:
            raise ConvergenceError(f"truncated eigenvalues still moving at N = {N2}")
        N, prev = N2, cur
    sym = matrix_eigenvalues(coeffs_fn, N2).symmetrized
    depth = max(60, N2)
    polished = []
    for E in cur:
        try:
            polished.append(polish_root(coeffs_fn, float(E), depth))
        except ConvergenceError:
            polished.append(float(E))
    polished = np.array(polished)
    res = np.array(
        [abs(_normalized_residual(coeffs_fn(E), depth, _best_row(coeffs_fn(E), depth))) for E in polished]
    )
    return Spectrum(polished, "continued-fraction", N2, res, sym)


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------


def minimal_ratios(coeffs: RecurrenceCoeffs, N: int, depth: int | None = None) -> np.ndarray:
    """r_n = b_n / b_{n-1} of the minimal solution for n = 1..N (index 0 unused).

    Backward recursion r_n = -gamma_n / (beta_n + alpha_n r_{n+1}) started
    with r = 0 at ``depth`` (default N + 60).
    """
    depth = depth if depth is not None else N + 60
    r = np.zeros(depth + 2, dtype=complex)
    for n in range(depth, 0, -1):
        a, b, g = coeffs.row(n)
        den = b + a * r[n + 1]
        if den == 0:
            den = _TINY
        r[n] = -g / den
    return r[: N + 1]


def solve_coefficients(coeffs: RecurrenceCoeffs | CoeffsFn, E: float | None = None, N: int = 60) -> np.ndarray:
    """b_0..b_N with b_0 = 1 at an eigenvalue.

    ``coeffs`` is either the recurrence already evaluated at the eigenvalue
    or a builder called with ``E``.  A terminating recurrence is solved by
    forward recursion and returned with its natural length; otherwise the
    minimal solution is matched, at the row of smallest |beta_n|, to a
    forward solution from b_0.  That row's equation is the closure test
    (relative mismatch at most CLOSURE_TOL).
    """
    if callable(coeffs) and not isinstance(coeffs, RecurrenceCoeffs):
        if E is None:
            raise ValueError("E is required when coeffs is a builder")
        coeffs = coeffs(E)
    term = termination(coeffs, nmax=max(N, 1))
    if term.right_stop is not None and term.right_stop <= N:
        M = term.right_stop
        b = np.zeros(M + 1, dtype=complex)
        b[0] = 1.0
        for n in range(M):
            a, be, g = coeffs.row(n)
            prev = b[n - 1] if n > 0 else 0.0
            if a == 0:
                raise ToleranceError(f"alpha_{n} = 0 inside a finite series; shift the recurrence first")
            b[n + 1] = -(be * b[n] + g * prev) / a
        _, be, g = coeffs.row(M)
        lhs = be * b[M] + (g * b[M - 1] if M > 0 else 0.0)
        scale = abs(be * b[M]) + (abs(g * b[M - 1]) if M > 0 else 0.0)
        _check_closure(lhs, scale)
        return _realify(b)
    r = minimal_ratios(coeffs, N)
    # forward below the turning row, minimal ratios above it; match at row m
    m = min(_best_row(coeffs, N), N - 1) if N >= 1 else 0
    b = np.empty(N + 1, dtype=complex)
    b[0] = 1.0
    for n in range(m):
        a, be, g = coeffs.row(n)
        if a == 0:
            m = n
            break
        b[n + 1] = -(be * b[n] + (g * b[n - 1] if n > 0 else 0.0)) / a
    for n in range(m + 1, N + 1):
        b[n] = b[n - 1] * r[n]
    a, be, g = coeffs.row(m)
    prev = g * b[m - 1] if m > 0 else 0.0
    nxt = a * b[m + 1] if N >= 1 else 0.0
    lhs = be * b[m] + prev + nxt
    scale = abs(be * b[m]) + abs(prev) + abs(nxt)
    _check_closure(lhs, scale)
    return _realify(b)


def _check_closure(lhs, scale):
    if scale == 0:
        return
    if abs(lhs) > CLOSURE_TOL * scale:
        raise ToleranceError(f"recurrence closure mismatch {abs(lhs) / scale:.2e}: not an eigenvalue")


def _realify(b: np.ndarray) -> np.ndarray:
    if np.all(b.imag == 0):
        return b.real.copy()
    return b


# ---------------------------------------------------------------------------
# Bender-Dunne polynomials
# ---------------------------------------------------------------------------


def _padd(p, q):
    n = max(len(p), len(q))
    z = p[0] * 0
    return [(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)]


def _pscale(p, c):
    return [c * x for x in p]


def _pshift(p):
    return [p[0] * 0] + list(p)


@dataclass
class BenderDunneSeq:
    """P_{n+1}(E) = (E + k_n) P_n(E) - gamma_n P_{n-1}(E), P_{-1} = 0, P_0 = 1.

    ``polys[n]`` holds the coefficients of P_n in ascending powers of E.
    Exact when k_n and gamma_n are Fractions.
    """

    knl: Callable[[int], object]
    gamma: Callable[[int], object]
    polys: list = field(default_factory=list)

    def extend(self, count: int) -> "BenderDunneSeq":
        if not self.polys:
            one = self.knl(0) * 0 + 1
            self.polys = [[one]]
        while len(self.polys) < count + 1:
            n = len(self.polys) - 1
            pn = self.polys[n]
            nxt = _padd(_pshift(pn), _pscale(pn, self.knl(n)))
            if n >= 1:
                nxt = _padd(nxt, _pscale(self.polys[n - 1], -self.gamma(n)))
            self.polys.append(nxt)
        return self

    def __getitem__(self, n: int):
        self.extend(n)
        return self.polys[n]

    def evaluate(self, n: int, E: float) -> tuple[float, float]:
        """P_n(E) and dP_n/dE by the recursion itself (better conditioned than Horner)."""
        p_prev, p = 0.0, 1.0
        d_prev, d = 0.0, 0.0
        for k in range(n):
            kk, g = float(self.knl(k)), (float(self.gamma(k)) if k >= 1 else 0.0)
            p_new = (E + kk) * p - g * p_prev
            d_new = p + (E + kk) * d - g * d_prev
            p_prev, p, d_prev, d = p, p_new, d, d_new
        return p, d

    def roots(self, n: int) -> np.ndarray:
        """Roots of P_n, from the companion matrix and then Newton on the recursion."""
        coeffs = [float(c) for c in self[n]]
        raw = np.roots(coeffs[::-1])
        out = []
        for r in raw:
            if abs(r.imag) > 1e-8 * max(1.0, abs(r)):
                out.append(complex(r))
                continue
            x = r.real
            for _ in range(20):
                p, d = self.evaluate(n, x)
                if d == 0:
                    break
                step = p / d
                x -= step
                if abs(step) <= 1e-16 * max(1.0, abs(x)):
                    break
            out.append(x)
        arr = np.array(out)
        return np.sort(arr.real) if not np.iscomplexobj(arr) else np.sort_complex(arr)


def bender_dunne(knl: Callable[[int], object], gamma: Callable[[int], object], count: int) -> BenderDunneSeq:
    """Build P_0..P_count of the Bender-Dunne recursion."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return BenderDunneSeq(knl, gamma).extend(count)


# ---------------------------------------------------------------------------
# Degeneracy
# ---------------------------------------------------------------------------


def degeneracy_check(A: Tridiag, B: Tridiag, rtol: float = 1e-10) -> dict:
    """Compare two l x l matrices related by reversal of their elements.

    identity_ok: B.diag[k] = A.diag[l-1-k] and B.sub[k-1] = A.sub[l-1-k]
    (i.e. the sub-diagonal read backwards).  The determinants come from the
    three-term recursion.
    """
    if A.size != B.size:
        raise ValueError(f"dimension mismatch: {A.size} vs {B.size}")
    l = A.size
    d_ok = np.allclose(B.diag, A.diag[::-1], rtol=1e-12, atol=0)
    g_ok = np.allclose(B.sub, A.sub[::-1], rtol=1e-12, atol=0) if l > 1 else True
    dA, dB = A.det(), B.det()
    scale = max(abs(dA), abs(dB))
    match = abs(dA - dB) <= rtol * scale if scale else True
    return {"detA": dA, "detB": dB, "match": bool(match), "identity_ok": bool(d_ok and g_ok)}


def as_fraction(x) -> Fraction:
    """Exact rational value of a float or int."""
    return x if isinstance(x, Fraction) else Fraction(x)
