"""Finite-difference ODE residuals used by the drivers and the test suite."""

from __future__ import annotations

from typing import Callable

import numpy as np

# eighth-order central stencils on offsets -4..4
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
_OFFSETS = np.arange(-4, 5)


def derivatives(f: Callable, x, h: float):
    """Value, first and second derivative of ``f`` at ``x`` along the real direction."""
    vals = np.array([f(x + k * h) for k in _OFFSETS])
    return vals[4], _D1 @ vals / h, _D2 @ vals / h**2


def relative_residual(f: Callable, coeffs: Callable, grid, h: float | None = None) -> float:
    """max |f'' + P f' + Q f| / max(|f''| + |P f'| + |Q f|) over ``grid``.

    ``coeffs(x)`` returns (P, Q) for the normalized equation f'' + P f' + Q f = 0.
    By default the step follows the local wavelength of the solution.  ``f``
    is called on whole arrays when it accepts them.
    """
    grid = np.asarray(grid, dtype=float)
    PQ = np.array([coeffs(x) for x in grid], dtype=complex).reshape(-1, 2)
    P, Q = PQ[:, 0], PQ[:, 1]
    if h is None:
        # resolve the local wavelength: h ~ 0.2 / sqrt|Q|
        step = np.minimum(1e-2, 0.2 / np.sqrt(np.maximum.reduce([np.abs(Q), np.abs(P) ** 2, np.ones_like(grid)])))
    else:
        step = np.full(grid.shape, float(h))
    f0, f1, f2 = derivatives(_on_arrays(f), grid, step)
    terms = np.array([f2, P * f1, Q * f0])
    num = np.max(np.abs(terms.sum(axis=0)))
    den = np.max(np.abs(terms).sum(axis=0))
    return float(num / den if den else num)


def _on_arrays(f: Callable) -> Callable:
    def g(x):
        try:
            out = np.asarray(f(x))
            if out.shape == x.shape:
                return out
        except TypeError:
            pass
        return np.array([f(v) for v in x])

    return g


def schrodinger_residual(f: Callable, potential_term: Callable, grid, h: float | None = None) -> float:
    """Residual of f'' + W(x) f = 0 where ``potential_term`` gives W."""
    return relative_residual(f, lambda x: (0.0, potential_term(x)), grid, h)
