"""Parameter space, transformations and Bessel-series coefficient generators.

The equation handled throughout the package is

    z (z - z0) U'' + (B1 + B2 z) U' + [B3 + q (z - z0)] U = 0,   q != 0.

Eight families of one-sided expansions U_i^(j), i = 1..8, are built on the
four cylinder functions Z^(j) (J, Y, H1, H2).  Sets 1-4 use the argument
2 sqrt(q z), sets 5-8 the argument 2 sqrt(q (z - z0)).  Each set comes with
a three-term recurrence for its coefficients b_n, written in one of three
forms (R1, R2, R3) that differ only in how the first rows are closed.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import BranchError, DomainWarning, ValidityError
from .specfun import BesselKind, bessel_sequence

__all__ = [
    "CheParams",
    "SolutionSet",
    "RecurrenceForm",
    "RecurrenceCoeffs",
    "ValidityReport",
    "Termination",
    "Prefactor",
    "TransformResult",
    "transform",
    "coefficients",
    "validity",
    "termination",
    "evaluate_solution",
    "che_residual",
]

_EPS = 1e-12


def _num(x):
    """Keep reals real: complex with zero imaginary part becomes float."""
    x = complex(x)
    return x.real if x.imag == 0 else x


def _is_int(x, tol: float = 1e-12) -> bool:
    x = complex(x)
    return abs(x.imag) <= tol and abs(x.real - round(x.real)) <= tol * max(1.0, abs(x.real))


def _nonpos_int(x) -> bool:
    return _is_int(x) and round(complex(x).real) <= 0


@dataclass(frozen=True)
class CheParams:
    """The five constants (z0, B1, B2, B3, q) of the equation."""

    z0: complex
    B1: complex
    B2: complex
    B3: complex
    q: complex

    def __post_init__(self):
        for name in ("z0", "B1", "B2", "B3", "q"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, _num(v))
        if self.q == 0:
            raise ValueError("q = 0 reduces the equation to a hypergeometric one; not supported")

    @property
    def r(self):
        """B1 / z0."""
        if self.z0 == 0:
            raise ZeroDivisionError("B1/z0 undefined for z0 = 0")
        return _num(self.B1 / self.z0)

    @property
    def s(self):
        """B2/2 + B1/z0."""
        return _num(self.B2 / 2 + self.r)

    def with_(self, **kw) -> "CheParams":
        return replace(self, **kw)


class RecurrenceForm(enum.Enum):
    R1 = "R1"  # beta_0 b_0 + alpha_0 b_1 = 0
    R2 = "R2"  # second row carries (alpha_{-1} + gamma_1) b_0
    R3 = "R3"  # first row carries (beta_0 + alpha_{-1}) b_0


@dataclass(frozen=True)
class SolutionSet:
    """Selects expansion U_i^(j): family ``i`` in 1..8, Bessel kind ``j`` in 1..4."""

    i: int
    j: BesselKind = BesselKind.J

    def __post_init__(self):
        if self.i not in range(1, 9):
            raise ValueError("set index must be in 1..8")
        object.__setattr__(self, "j", BesselKind.coerce(self.j))

    @property
    def subgroup(self) -> int:
        return 1 if self.i <= 4 else 2

    @property
    def base(self) -> int:
        """Index within the subgroup, 1..4."""
        return (self.i - 1) % 4 + 1

    def order(self, p: CheParams, n):
        """Bessel order of the n-th term."""
        b = self.base
        if b == 1:
            return 2 * n + p.B2 - 1
        if b == 2:
            return 2 * n + 1 + p.B2 + 2 * p.r
        if b == 3:
            return 2 * n + 3 - p.B2
        return 2 * n + 1 - p.B2 - 2 * p.r

    def argument(self, p: CheParams, z: complex) -> complex:
        """2 sqrt(q z) or 2 sqrt(q (z - z0)), principal branch."""
        w = z if self.subgroup == 1 else z - p.z0
        return 2 * cmath.sqrt(p.q * w)

    def prefactor(self, p: CheParams) -> "Prefactor":
        """Powers (a, c) in z^a (z - z0)^c."""
        b, g = self.base, self.subgroup
        if self.i in (1, 2):
            return Prefactor((1 - p.B2) / 2, 0)
        if self.i in (5, 8):
            return Prefactor(0, (1 - p.B2) / 2)
        if self.i in (3, 4):
            return Prefactor(p.r + p.B2 / 2 - 0.5, 1 - p.B2 - p.r)
        assert g == 2 and b in (2, 3)
        return Prefactor(1 + p.r, -0.5 - p.r - p.B2 / 2)


@dataclass(frozen=True)
class Prefactor:
    """z^a (z - z0)^c."""

    a: complex
    c: complex

    def __call__(self, z: complex, z0: complex, branch: str | None = "principal") -> complex:
        return _power(z, self.a, branch) * _power(z - z0, self.c, branch)

    def describe(self) -> str:
        parts = []
        if self.a != 0:
            parts.append(f"z^({_num(self.a)})")
        if self.c != 0:
            parts.append(f"(z-z0)^({_num(self.c)})")
        return " * ".join(parts) or "1"


def _power(base: complex, expo: complex, branch: str | None) -> complex:
    expo = complex(expo)
    if expo == 0:
        return 1.0 + 0j
    base = complex(base)
    if base == 0:
        return 0j if expo.real > 0 else complex(math.inf)
    if base.imag == 0 and base.real < 0 and not _is_int(expo):
        if branch is None:
            raise BranchError(f"power {expo} of negative real {base.real} needs a branch choice")
        if branch == "lower":
            return cmath.exp(expo * (math.log(-base.real) - 1j * math.pi))
        if branch != "principal":
            raise ValueError(f"unknown branch {branch!r}")
    return cmath.exp(expo * cmath.log(base))


# ---------------------------------------------------------------------------
# Coefficient algebra: constant * prod(a_i n + c_i) / prod(d_j n + e_j)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Lin:
    a: complex
    c: complex

    def __call__(self, n):
        return self.a * n + self.c

    def root(self):
        return None if self.a == 0 else -self.c / self.a


@dataclass(frozen=True)
class _Rational:
    """K * prod(num) / prod(den) with common linear factors cancelled."""

    K: complex
    num: tuple = ()
    den: tuple = ()

    @classmethod
    def build(cls, K, num: Sequence[_Lin], den: Sequence[_Lin]) -> "_Rational":
        K = complex(K)
        nums, dens = [], []
        for f in num:
            if f.a == 0:
                K *= f.c
            else:
                nums.append(f)
        for f in den:
            if f.a == 0:
                K /= f.c
            else:
                dens.append(f)
        if K == 0:
            return cls(0.0, (), ())
        kept = []
        for f in nums:
            rf = f.root()
            hit = None
            for k, g in enumerate(dens):
                rg = g.root()
                if abs(rf - rg) <= _EPS * max(1.0, abs(rf)):
                    hit = k
                    break
            if hit is None:
                kept.append(f)
            else:
                K *= f.a / dens[hit].a
                dens.pop(hit)
        return cls(_num(K), tuple(kept), tuple(dens))

    def __call__(self, n):
        if self.K == 0:
            return 0.0
        v = self.K
        for f in self.num:
            v = v * f(n)
        for f in self.den:
            v = v / f(n)
        return _num(v)

    def integer_zeros(self, nmax: int) -> list[int]:
        out = []
        for f in self.num:
            r = f.root()
            if _is_int(r) and 0 <= round(complex(r).real) <= nmax:
                out.append(int(round(complex(r).real)))
        return sorted(set(out))

    def integer_poles(self, nmin: int, nmax: int) -> list[int]:
        out = []
        for f in self.den:
            r = f.root()
            if _is_int(r) and nmin <= round(complex(r).real) <= nmax:
                out.append(int(round(complex(r).real)))
        return sorted(set(out))

    @property
    def is_zero(self) -> bool:
        return self.K == 0


@dataclass(frozen=True)
class _Beta:
    """c0 + 4 L1(n) L2(n) + frac(n)."""

    c0: complex
    L1: _Lin
    L2: _Lin
    frac: _Rational

    def __call__(self, n):
        return _num(self.c0 + 4 * self.L1(n) * self.L2(n) + self.frac(n))


def _lin(c, a=1.0) -> _Lin:
    return _Lin(complex(a), complex(c))


def _set_formulas(i: int, p: CheParams):
    q, z0, B1, B2, B3 = p.q, p.z0, p.B1, p.B2, p.B3
    c0 = 4 * B3 - 2 * q * z0
    b = (i - 1) % 4 + 1
    if b == 1:
        den_a = (_lin(B2 / 2), _lin(B2 / 2 + 0.5))
        den_g = (_lin(B2 / 2 - 1.5), _lin(B2 / 2 - 1))
        frac = _Rational.build(
            -2 * q * (B2 / 2 - 1) * (z0 * B2 / 2 + B1), (), (_lin(B2 / 2 - 1), _lin(B2 / 2))
        )
        beta = _Beta(c0, _lin(0), _lin(B2 - 1), frac)
        if i == 1:
            # z0-safe forms: q z0 (n - B1/z0) = q (z0 n - B1)
            alpha = _Rational.build(q, (_lin(1), _lin(-B1, z0)), den_a)
            gamma = _Rational.build(q, (_lin(B2 - 2), _lin(z0 * (B2 - 1) + B1, z0)), den_g)
        else:
            r = p.r
            alpha = _Rational.build(-q * z0, (_lin(1), _lin(B2 + r)), den_a)
            gamma = _Rational.build(-q * z0, (_lin(B2 - 2), _lin(-1 - r)), den_g)
        return alpha, beta, gamma
    if b == 3:
        den_a = (_lin(2 - B2 / 2), _lin(2.5 - B2 / 2))
        den_g = (_lin(0.5 - B2 / 2), _lin(1 - B2 / 2))
        frac = _Rational.build(
            -2 * q * (B2 / 2 - 1) * (z0 * B2 / 2 + B1), (), (_lin(1 - B2 / 2), _lin(2 - B2 / 2))
        )
        beta = _Beta(c0, _lin(1), _lin(2 - B2), frac)
        if i == 3:
            alpha = _Rational.build(q, (_lin(1), _lin(2 * z0 + B1, z0)), den_a)
            gamma = _Rational.build(q, (_lin(2 - B2), _lin(z0 * (1 - B2) - B1, z0)), den_g)
        else:
            r = p.r
            alpha = _Rational.build(-q * z0, (_lin(1), _lin(2 - B2 - r)), den_a)
            gamma = _Rational.build(-q * z0, (_lin(2 - B2), _lin(1 + r)), den_g)
        return alpha, beta, gamma
    r = p.r
    s = B2 / 2 + r
    if b == 2:
        den_a = (_lin(1 + s), _lin(1.5 + s))
        den_g = (_lin(s - 0.5), _lin(s))
        frac = _Rational.build(-2 * q * z0 * (B2 / 2 - 1) * s, (), (_lin(s), _lin(1 + s)))
        beta = _Beta(c0, _lin(1 + r), _lin(B2 + r), frac)
        if i == 2:
            alpha = _Rational.build(q * z0, (_lin(1), _lin(2 + r)), den_a)
            gamma = _Rational.build(q * z0, (_lin(B2 + r - 1), _lin(B2 + 2 * r)), den_g)
        else:
            alpha = _Rational.build(-q * z0, (_lin(1), _lin(B2 + r)), den_a)
            gamma = _Rational.build(-q * z0, (_lin(B2 + 2 * r), _lin(1 + r)), den_g)
        return alpha, beta, gamma
    den_a = (_lin(1 - s), _lin(1.5 - s))
    den_g = (_lin(-0.5 - s), _lin(-s))
    frac = _Rational.build(-2 * q * z0 * (B2 / 2 - 1) * s, (), (_lin(-s), _lin(1 - s)))
    beta = _Beta(c0, _lin(-r), _lin(1 - B2 - r), frac)
    if i == 4:
        alpha = _Rational.build(q * z0, (_lin(1), _lin(-r)), den_a)
        gamma = _Rational.build(q * z0, (_lin(1 - B2 - r), _lin(-B2 - 2 * r)), den_g)
    else:
        alpha = _Rational.build(-q * z0, (_lin(1), _lin(2 - B2 - r)), den_a)
        gamma = _Rational.build(-q * z0, (_lin(-1 - r), _lin(-B2 - 2 * r)), den_g)
    return alpha, beta, gamma


def _form_for(i: int, p: CheParams) -> RecurrenceForm:
    b = (i - 1) % 4 + 1
    if b == 1:
        key, r2, r3 = p.B2, 1, 2
    elif b == 3:
        key, r2, r3 = p.B2, 3, 2
    elif b == 2:
        key, r2, r3 = p.s, -0.5, 0
    else:
        key, r2, r3 = p.s, 0.5, 0
    if abs(complex(key) - r2) <= _EPS:
        return RecurrenceForm.R2
    if abs(complex(key) - r3) <= _EPS:
        return RecurrenceForm.R3
    return RecurrenceForm.R1


# ---------------------------------------------------------------------------
# Recurrence coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1} = 0 with a first-row form.

    ``offset`` shifts the index: row m of this object is row m + offset of
    the underlying recurrence (used after a series is cut on the left).
    The ``row`` accessor folds alpha_{-1} into the first rows so that every
    form looks like R1 to downstream code.
    """

    alpha_fn: Callable
    beta_fn: Callable
    gamma_fn: Callable
    form: RecurrenceForm = RecurrenceForm.R1
    alpha_minus1: complex = 0.0
    offset: int = 0
    set: SolutionSet | None = None
    params: CheParams | None = None
    _alpha_rat: _Rational | None = field(default=None, repr=False, compare=False)
    _gamma_rat: _Rational | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_callables(cls, alpha, beta, gamma, form=RecurrenceForm.R1, alpha_minus1=0.0):
        return cls(alpha, beta, gamma, RecurrenceForm(form), alpha_minus1)

    def alpha(self, n):
        return self.alpha_fn(n + self.offset)

    def beta(self, n):
        return self.beta_fn(n + self.offset)

    def gamma(self, n):
        return self.gamma_fn(n + self.offset)

    def row(self, n):
        """(alpha_n, beta_n, gamma_n) with the first-row modifications applied."""
        a, b, g = self.alpha(n), self.beta(n), self.gamma(n)
        if self.offset == 0:
            if n == 0:
                g = 0.0
                if self.form is RecurrenceForm.R3:
                    b = b + self.alpha_minus1
            elif n == 1 and self.form is RecurrenceForm.R2:
                g = g + self.alpha_minus1
        elif n == 0:
            g = 0.0
        return a, b, g

    def rows(self, N: int):
        """Arrays alpha[0..N], beta[0..N], gamma[0..N] (gamma[0] = 0)."""
        a = np.empty(N + 1, dtype=complex)
        b = np.empty(N + 1, dtype=complex)
        g = np.empty(N + 1, dtype=complex)
        for n in range(N + 1):
            a[n], b[n], g[n] = self.row(n)
        if not (np.any(a.imag) or np.any(b.imag) or np.any(g.imag)):
            return a.real, b.real, g.real
        return a, b, g

    def shifted(self, offset: int) -> "RecurrenceCoeffs":
        """Re-index so that row 0 is row ``offset`` of the original recurrence.

        Past the first rows every form reads as R1.
        """
        return replace(self, offset=self.offset + offset, form=RecurrenceForm.R1 if offset else self.form)

    def order(self, n):
        if self.set is None or self.params is None:
            raise ValueError("coefficients not tied to a solution set")
        return self.set.order(self.params, n + self.offset)


def coefficients(set_: SolutionSet, p: CheParams, check: bool = True) -> RecurrenceCoeffs:
    """Recurrence coefficients for solution set ``set_`` at parameters ``p``.

    Raises
    ------
    ValidityError
        If the set's restriction fails, or a denominator vanishes at an
        integer n >= 0 after cancellation.
    """
    if check:
        rep = validity(set_, p)
        if not rep.ok:
            raise ValidityError(rep.reason)
    alpha, beta, gamma = _set_formulas(set_.i, p)
    form = _form_for(set_.i, p)
    am1 = alpha(-1) if form is not RecurrenceForm.R1 else 0.0
    for name, rat, lo in (("alpha", alpha, 0), ("gamma", gamma, 1), ("beta", beta.frac, 0)):
        poles = rat.integer_poles(lo, 10**9)
        if poles:
            raise ValidityError(f"{name}_n of set {set_.i} has a vanishing denominator at n={poles[0]}")
    return RecurrenceCoeffs(
        alpha,
        beta,
        gamma,
        form,
        am1,
        0,
        set_,
        p,
        alpha,
        gamma,
    )


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    set: int
    reason: str | None = None

    def __bool__(self):
        return self.ok


def validity(set_: SolutionSet | int, p: CheParams) -> ValidityReport:
    """Check the parameter restriction attached to a solution set."""
    i = set_.i if isinstance(set_, SolutionSet) else int(set_)
    b = (i - 1) % 4 + 1
    if p.z0 == 0 and i not in (1, 3):
        return ValidityReport(False, i, f"set {i} needs z0 != 0 (uses B1/z0)")
    if b == 1:
        if _nonpos_int(p.B2):
            return ValidityReport(False, i, f"set {i}: B2 = {p.B2} is a non-positive integer")
    elif b == 3:
        if _is_int(p.B2) and round(complex(p.B2).real) >= 4:
            return ValidityReport(False, i, f"set {i}: B2 = {p.B2} is an integer >= 4")
    elif b == 2:
        t = 2 * complex(p.s)
        if _is_int(t) and round(t.real) <= -2:
            return ValidityReport(False, i, f"set {i}: B2/2 + B1/z0 = {p.s} is in -1, -3/2, -2, ...")
    else:
        t = 2 * complex(p.s)
        if _is_int(t) and round(t.real) >= 2:
            return ValidityReport(False, i, f"set {i}: B2/2 + B1/z0 = {p.s} is in 1, 3/2, 2, ...")
    return ValidityReport(True, i)


@dataclass(frozen=True)
class Termination:
    right_stop: int | None = None
    left_start: int | None = None


def termination(coeffs: RecurrenceCoeffs, nmax: int = 10000) -> Termination:
    """Locate right termination (gamma_{N+1} = 0) and left start (alpha_{N0} = 0).

    Zeros are found from the linear factors when available (exact), else by
    scanning ``row`` values for exact zeros.
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    off = coeffs.offset
    right = left = None
    if coeffs._gamma_rat is not None and coeffs._alpha_rat is not None:
        gz = [n - off for n in coeffs._gamma_rat.integer_zeros(nmax + off + 1) if n - off >= 1]
        if coeffs.form is RecurrenceForm.R2 and off == 0 and 1 in gz:
            if coeffs.row(1)[2] != 0:
                gz.remove(1)
        if coeffs._gamma_rat.is_zero:
            gz = [1]
        if gz:
            right = gz[0] - 1
        az = [n - off for n in coeffs._alpha_rat.integer_zeros(nmax + off) if n - off >= 0]
        if coeffs._alpha_rat.is_zero:
            az = [0]
        if right is not None:
            az = [n for n in az if n <= right]
        if az:
            left = az[-1] + 1
        return Termination(right, left)
    for n in range(1, nmax + 2):
        if coeffs.row(n)[2] == 0:
            right = n - 1
            break
    top = nmax if right is None else right
    for n in range(0, top + 1):
        if coeffs.row(n)[0] == 0:
            left = n + 1
    return Termination(right, left)


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformResult:
    params: CheParams
    prefactor: Prefactor
    variable: str
    constants: dict


def transform(p: CheParams, rule: str) -> TransformResult:
    """Apply one of the three parameter transformations T1, T2, T3.

    T1: U -> z^(1+B1/z0) U(C1, C2, C3; z0, q; z)
    T2: U -> (z-z0)^(1-B2-B1/z0) U(B1, D2, D3; z0, q; z)
    T3: U -> U(-B1-B2 z0, B2, B3-q z0; z0, -q; z0-z)
    """
    rule = rule.upper()
    if rule in ("T1", "T2") and p.z0 == 0:
        raise ZeroDivisionError(f"{rule} needs z0 != 0")
    if rule == "T1":
        r = p.r
        C1 = -p.B1 - 2 * p.z0
        C2 = 2 + p.B2 + 2 * r
        C3 = p.B3 + (1 + r) * (p.B2 + r)
        return TransformResult(
            CheParams(p.z0, C1, C2, C3, p.q), Prefactor(1 + r, 0), "z", {"C1": C1, "C2": C2, "C3": C3}
        )
    if rule == "T2":
        r = p.r
        D2 = 2 - p.B2 - 2 * r
        D3 = p.B3 + r * (r + p.B2 - 1)
        return TransformResult(
            CheParams(p.z0, p.B1, D2, D3, p.q), Prefactor(0, 1 - p.B2 - r), "z", {"D2": D2, "D3": D3}
        )
    if rule == "T3":
        return TransformResult(
            CheParams(p.z0, -p.B1 - p.B2 * p.z0, p.B2, p.B3 - p.q * p.z0, -p.q),
            Prefactor(0, 0),
            "z0-z",
            {},
        )
    raise ValueError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate_solution(
    set_: SolutionSet,
    p: CheParams,
    b: Sequence[complex],
    z: complex,
    offset: int = 0,
    branch: str | None = None,
    check_domain: bool = True,
) -> complex:
    """prefactor(z) * sum_n (-1)^(n+offset) b_n Z_{ord(n+offset)}(argument(z)).

    ``b[m]`` multiplies the term with recurrence index m + offset.
    ``branch`` selects how prefactor powers of negative reals are taken:
    None raises BranchError, "principal" uses arg = pi, "lower" arg = -pi.
    """
    z = complex(z)
    b = np.asarray(b, dtype=complex)
    if check_domain and set_.j is not BesselKind.J:
        from .convergence import domain  # local import avoids a cycle

        d = domain(set_, p)
        inside = d.contains(z)
        if inside is False:
            warnings.warn(f"z={z} lies outside the convergence domain of {set_}", DomainWarning, stacklevel=2)
    pre = set_.prefactor(p)(z, p.z0, branch)
    x = set_.argument(p, z)
    if x == 0:
        if set_.j is not BesselKind.J:
            raise ValueError("Y/H expansions are singular where their argument vanishes")
    count = len(b)
    nu0 = set_.order(p, offset)
    if complex(nu0).imag != 0:
        raise ValueError("complex Bessel order is not supported")
    nu0 = complex(nu0).real
    if x == 0:
        zs = np.array([1.0 + 0j if nu0 + 2 * k == 0 else 0j for k in range(count)])
    else:
        zs = bessel_sequence(set_.j, nu0, count, x, step=2)
    sign = (-1.0) ** (np.arange(count) + offset)
    return complex(pre * np.sum(sign * b * zs))


def che_residual(p: CheParams, U: Callable[[complex], complex], z: complex, h: float = 1e-3) -> complex:
    """Relative residual of the equation at z by eighth-order central differences."""
    from .residual import derivatives

    u0, u1, u2 = derivatives(U, z, h)
    lhs = z * (z - p.z0) * u2 + (p.B1 + p.B2 * z) * u1 + (p.B3 + p.q * (z - p.z0)) * u0
    scale = abs(z * (z - p.z0) * u2) + abs((p.B1 + p.B2 * z) * u1) + abs((p.B3 + p.q * (z - p.z0)) * u0)
    return lhs / scale if scale else lhs
