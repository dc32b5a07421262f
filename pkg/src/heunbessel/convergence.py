"""Convergence diagnostics for the one-sided Bessel series.

Predicted and measured coefficient tail ratios, the classification of
where expansions in Y and Hankel functions converge (including the Raabe
refinement on the boundary circle), and measured term ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

from .che import CheParams, SolutionSet
from .specfun import BesselKind, bessel_ratio

__all__ = [
    "Domain",
    "tail_ratio_prediction",
    "raabe_exponent",
    "domain",
    "measured_tail_ratio",
    "term_ratio",
    "term_ratio_prediction",
]

_EQ_TOL = 1e-12


def tail_ratio_prediction(p: CheParams, n: int) -> complex:
    """Leading large-n behaviour of b_{n+1}/b_n for the minimal solution of set 1."""
    if n < 10:
        raise ValueError("the expansion is only meaningful for n >= 10")
    if p.z0 == 0:
        return -p.q * p.B1 / (4 * n**3)
    return -p.q * p.z0 / (4 * n**2) * (1 + (p.B1 / p.z0 - 1.5) / n)


def raabe_exponent(set_: SolutionSet, p: CheParams) -> complex:
    """The quantity whose real part decides convergence on the boundary circle.

    Sets 1/2 and 3/4 use B2 + B1/z0, sets 5/6 and 7/8 use B1/z0.
    """
    return p.B2 + p.r if set_.subgroup == 1 else p.r


@dataclass(frozen=True)
class Domain:
    """Where a series converges.

    ``everywhere`` is True for expansions in J (all finite z).  Otherwise the
    series converges for |z - center| > radius; ``boundary_included`` is
    True, False, or None when the Raabe exponent sits exactly on the
    threshold and the boundary is left undetermined.
    """

    set: SolutionSet
    everywhere: bool
    center: complex = 0.0
    radius: float = 0.0
    boundary_included: bool | None = False
    note: str = ""

    def contains(self, z: complex) -> bool | None:
        if self.everywhere:
            return True
        d = abs(complex(z) - self.center)
        if abs(d - self.radius) <= 1e-12 * max(1.0, self.radius):
            return self.boundary_included
        return d > self.radius

    def describe(self) -> str:
        if self.everywhere:
            return "all finite z"
        var = "|z|" if self.center == 0 else "|z-z0|"
        if self.boundary_included is None:
            return f"{var} > {self.radius:g} (boundary undetermined)"
        op = ">=" if self.boundary_included else ">"
        return f"{var} {op} {self.radius:g}"


def domain(set_: SolutionSet, p: CheParams) -> Domain:
    """Convergence region of an infinite series starting at n = 0."""
    if set_.j is BesselKind.J:
        return Domain(
            set_,
            True,
            note="converges for every finite z; boundedness at z = infinity is not implied",
        )
    if p.z0 == 0:
        if set_.i not in (1, 3):
            raise ValueError("only sets 1 and 3 exist for z0 = 0")
        return Domain(set_, False, 0.0, 0.0, False, "z0 = 0: converges for |z| > 0")
    center = 0.0 if set_.subgroup == 1 else p.z0
    radius = abs(p.z0)
    x = complex(raabe_exponent(set_, p)).real
    # sets whose ratio carries +exponent need it below 1, the others above 1
    wants_below = set_.base in (1, 2) if set_.subgroup == 1 else set_.base in (3, 4)
    if abs(x - 1) <= _EQ_TOL:
        included = None
    elif wants_below:
        included = x < 1
    else:
        included = x > 1
    return Domain(set_, False, center, radius, included)


def measured_tail_ratio(coeffs, n: int, depth: int | None = None) -> complex:
    """b_{n+1}/b_n of the minimal solution, from backward recursion."""
    from .spectral import minimal_ratios

    r = minimal_ratios(coeffs, n + 1, depth if depth is not None else n + 200)
    return complex(r[n + 1])


def term_ratio(set_: SolutionSet, p: CheParams, coeffs, z: complex, n: int) -> complex:
    """b_{n+1} Z_{ord(n+1)} / (b_n Z_{ord(n)}) at z (sign law included)."""
    b_ratio = measured_tail_ratio(coeffs, n)
    nu = complex(set_.order(p, n)).real
    x = set_.argument(p, z)
    zr = bessel_ratio(set_.j, nu, x, 2)
    return -b_ratio * zr[0] * zr[1]


def term_ratio_prediction(set_: SolutionSet, p: CheParams, z: complex, n: int) -> float:
    """|z0/z| (1 + Re(B2 - 2 + B1/z0)/n) for set 1 (its transforms follow the same law)."""
    w = complex(z) if set_.subgroup == 1 else complex(z) - p.z0
    return abs(p.z0 / w) * (1 + complex(p.B2 - 2 + p.r).real / n)
