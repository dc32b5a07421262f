"""Special functions used by the Bessel-series solvers.

Bessel functions of the four kinds for real order and complex argument,
closed forms for half-odd-integer order, Jacobi and associated Legendre
polynomials, and terminating Gauss hypergeometric sums.

Everything here is written from scratch on top of ``math``/``cmath`` and
numpy; ``scipy.special`` is only used by the test-suite as an oracle.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from fractions import Fraction

import numpy as np

__all__ = [
    "BesselKind",
    "PrecisionWarning",
    "bessel",
    "bessel_j",
    "bessel_y",
    "hankel1",
    "hankel2",
    "bessel_sequence",
    "bessel_j_reduced",
    "bessel_j_scaled_sequence",
    "bessel_half_integer",
    "half_integer_j_table",
    "bessel_ratio",
    "jacobi_poly",
    "jacobi_table",
    "assoc_legendre",
    "hypergeom_terminating",
]

EULER_GAMMA = 0.57721566490153286061

# stop the ascending series once |term| < SERIES_RTOL * |sum| three times running
SERIES_RTOL = 1e-17
# max|term| / |sum| above which the ascending series warns
CANCELLATION_THRESHOLD = 1e8
# the ascending series is used while |x| - |Im x| stays below this
_SERIES_LIMIT = 8.0

_RESCALE = 1e250
# the large-argument expansion is tried once |x| reaches this
_ASYM_LIMIT = 20.0


class BesselKind(enum.IntEnum):
    """The four cylinder functions Z^(j): J, Y, H1, H2 (j = 1..4)."""

    J = 1
    Y = 2
    H1 = 3
    H2 = 4

    @classmethod
    def coerce(cls, kind) -> "BesselKind":
        if isinstance(kind, cls):
            return kind
        try:
            if isinstance(kind, str):
                return cls[kind.upper()]
            return cls(int(kind))
        except (KeyError, ValueError):
            raise ValueError(f"unknown Bessel kind {kind!r}; use J, Y, H1, H2 or 1-4") from None


class PrecisionWarning(UserWarning):
    """Raised (as a warning) when a series loses many digits to cancellation."""


def _is_int(x: float) -> bool:
    return float(x).is_integer()


def _sincospi(nu: float) -> tuple[float, float]:
    """sin(pi nu), cos(pi nu) with exact zeros at integers and half-integers."""
    r = math.fmod(nu, 2.0)
    if (2 * r).is_integer():
        k = int(round(2 * r)) % 4
        return (0.0, 1.0, 0.0, -1.0)[k], (1.0, 0.0, -1.0, 0.0)[k]
    return math.sin(math.pi * r), math.cos(math.pi * r)


def _warn_recurrence(x: complex, top: float) -> None:
    # forward recurrence for Y picks up the recessive Hankel part, which
    # costs about exp(2|Im x|) once the order passes |x|
    if top > abs(x) and 2 * abs(x.imag) > 16:
        warnings.warn(
            f"upward Y recurrence at x={x} to order {top} may lose ~{2 * abs(x.imag) / math.log(10):.0f} digits",
            PrecisionWarning,
            stacklevel=4,
        )


def _gamma_sign(x: float) -> float:
    if x > 0:
        return 1.0
    return -1.0 if math.ceil(-x) % 2 else 1.0


def _log_rgamma(x: float):
    """(log|1/Gamma(x)|, sign) or None at the poles."""
    if x <= 0 and _is_int(x):
        return None
    return -math.lgamma(x), _gamma_sign(x)


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------


def _j_series(nu: float, x: complex) -> complex:
    x = complex(x)
    lr = _log_rgamma(nu + 1.0)
    if lr is None:  # negative integer order, caller reflects
        raise ValueError("series path needs nu not a negative integer")
    log_r, sign = lr
    half = x / 2
    pref = sign * cmath.exp(nu * cmath.log(half) + log_r)
    w = -(half * half)
    term = 1.0 + 0j
    total = term
    biggest = 1.0
    small = 0
    k = 0
    kmin = max(abs(x), -nu) + 2
    while True:
        term = term * w / ((k + 1) * (nu + k + 1))
        total += term
        k += 1
        a = abs(term)
        biggest = max(biggest, a)
        if a <= SERIES_RTOL * abs(total):
            small += 1
            if small >= 3 and k > kmin:
                break
        else:
            small = 0
        if k > 10000:
            break
    if total != 0 and biggest / abs(total) > CANCELLATION_THRESHOLD:
        warnings.warn(
            f"J series for nu={nu}, x={x} lost ~{math.log10(biggest / abs(total)):.0f} digits",
            PrecisionWarning,
            stacklevel=3,
        )
    return pref * total


def _use_series(nu: float, x: complex) -> bool:
    ax = abs(x)
    if ax - abs(x.imag) < _SERIES_LIMIT:
        return True
    return nu > 0 and ax * ax / 4 <= (nu + 1)


def _hankel_asym(nu: float, z: complex):
    """(H1, H2) from the large-argument expansion, or None if it is not
    accurate to working precision. Needs Re z >= 0."""
    az = abs(z)
    if az < _ASYM_LIMIT or nu * nu > az or z.real < 0:
        return None
    mu = 4 * nu * nu
    s1 = s2 = 1.0 + 0j
    t = 1.0 + 0j
    prev = math.inf
    k = 0
    while True:
        k += 1
        t = t * (mu - (2 * k - 1) ** 2) / (k * 8 * z)
        at = abs(t)
        if at > prev:
            return None
        prev = at
        ik = 1j**k
        s1 += ik * t
        s2 += t / ik
        if at < 1e-17:
            break
    w = z - (nu / 2 + 0.25) * math.pi
    pref = cmath.sqrt(2 / (math.pi * z))
    if abs(w.imag) > 700:
        raise OverflowError(f"Bessel functions overflow at {z}")
    return pref * cmath.exp(1j * w) * s1, pref * cmath.exp(-1j * w) * s2


def _neumann_weights(nu0: float, count: int) -> np.ndarray:
    """c_j with (x/2)^nu0 = sum_j c_j J_{nu0+2j}(x)."""
    c = np.empty(count)
    g = math.gamma(nu0 + 1.0)  # Gamma(nu0 + j) / j! at j = 1
    c[0] = g
    for j in range(1, count):
        c[j] = (nu0 + 2 * j) * g
        g *= (nu0 + j) / (j + 1)
    return c


def _j_miller(nu0: float, count: int, x: complex) -> np.ndarray:
    """J_{nu0+k}(x), k < count, by backward recurrence (nu0 >= 0, Re x >= 0).

    Normalised against the large-argument expansion when it is usable,
    the Neumann sum for moderate orders, otherwise the ascending series
    at the top order.
    """
    ax = abs(x)
    top = nu0 + count - 1
    big = max(top, ax)
    kmax = int(math.ceil(big - nu0)) + 30 + int(10 * ax ** (1 / 3))
    kmax += kmax % 2
    f = np.zeros(kmax + 2, dtype=complex)
    f[kmax] = 1e-300
    for k in range(kmax, 0, -1):
        f[k - 1] = (2 * (nu0 + k) / x) * f[k] - f[k + 1]
        if abs(f[k - 1]) > _RESCALE:
            f[k - 1 :] /= _RESCALE
    asym = _hankel_asym(nu0, x)
    if asym is not None:
        scale = 0.5 * (asym[0] + asym[1]) / f[0]
    elif nu0 <= 60:
        w = _neumann_weights(nu0, kmax // 2 + 1)
        s = np.dot(w, f[0 : kmax + 1 : 2])
        scale = (x / 2) ** nu0 / s
    else:
        scale = _j_series(top, x) / f[count - 1]
    return f[:count] * scale


def _j_forward(base: float, count: int, x: complex) -> np.ndarray | None:
    """Upward recurrence seeded by the large-argument expansion.

    Only used while every order stays well below |x|, where climbing is
    stable; Miller's method would need O(|x|) steps there.
    """
    if base + count > abs(x) / 2:
        return None
    a = _hankel_asym(base, x)
    b = _hankel_asym(base + 1, x)
    if a is None or b is None:
        return None
    out = np.empty(max(count, 2), dtype=complex)
    out[0], out[1] = 0.5 * (a[0] + a[1]), 0.5 * (b[0] + b[1])
    for k in range(1, count - 1):
        out[k + 1] = (2 * (base + k) / x) * out[k] - out[k - 1]
    return out[:count]


def _j_block(nu0: float, count: int, x: complex) -> np.ndarray:
    """J_{nu0+k}(x), k < count, for Re x >= 0 and nu0 not a negative integer."""
    if nu0 >= 0:
        base = nu0 - math.floor(nu0)
        up = _j_forward(base, int(round(nu0 - base)) + count, x)
        if up is not None:
            return up[int(round(nu0 - base)) :]
        if abs(x) >= _ASYM_LIMIT and _hankel_asym(nu0, x) is None:
            # normalise at the low base order where the expansion holds
            shift = int(round(nu0 - base))
            return _j_miller(base, count + shift, x)[shift:]
        return _j_miller(nu0, count, x)
    # start at the fractional base order and recur downward, which is
    # stable because J grows towards negative order
    base = nu0 - math.floor(nu0)
    drop = int(round(base - nu0))
    n = max(count - drop, 2)
    up = _j_forward(base, n, x)
    if up is None:
        up = _j_miller(base, n, x)
    out = np.empty(count, dtype=complex)
    hi, lo = up[1], up[0]
    vals = [lo]
    for k in range(drop):
        mu = base - k
        hi, lo = lo, (2 * mu / x) * lo - hi
        vals.append(lo)
    vals = vals[::-1]  # orders nu0 .. base
    for k in range(count):
        out[k] = vals[k] if k <= drop else up[k - drop]
    return out


def _reflect(x: complex):
    """w = -x and the side s = +-1 with arg x = arg w + s*pi."""
    return -x, (1 if x.imag >= 0 else -1)


def bessel_j(nu: float, x: complex) -> complex:
    """Bessel function of the first kind J_nu(x), principal branch."""
    nu = float(nu)
    x = complex(x)
    if x == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu > 0 or _is_int(nu):
            return 0j
        return complex(math.inf, 0)
    if nu < 0 and _is_int(nu):
        n = int(-nu)
        return (-1) ** n * bessel_j(n, x)
    if _use_series(nu, x):
        return _j_series(nu, x)
    if x.real < 0:
        w, s = _reflect(x)
        return cmath.exp(1j * s * math.pi * nu) * bessel_j(nu, w)
    asym = _hankel_asym(nu, x)
    if asym is not None:
        return 0.5 * (asym[0] + asym[1])
    return complex(_j_block(nu, 1, x)[0])


# ---------------------------------------------------------------------------
# Bessel Y and Hankel
# ---------------------------------------------------------------------------


def _y_integer_series(n: int, x: complex) -> complex:
    half = x / 2
    w = half * half
    s1 = 0j
    if n > 0:
        term = complex(math.factorial(n - 1))
        for k in range(n):
            s1 += term
            if k < n - 1:
                term *= w / ((k + 1) * (n - k - 1))
        s1 *= half ** (-n)
    psi_k = -EULER_GAMMA
    psi_nk = -EULER_GAMMA + sum(1.0 / j for j in range(1, n + 1))
    term = 1.0 / math.factorial(n) + 0j
    s2 = (psi_k + psi_nk) * term
    k = 0
    small = 0
    while True:
        term *= -w / ((k + 1) * (n + k + 1))
        k += 1
        psi_k += 1.0 / k
        psi_nk += 1.0 / (n + k)
        t = (psi_k + psi_nk) * term
        s2 += t
        if abs(t) <= SERIES_RTOL * abs(s2):
            small += 1
            if small >= 3 and k > abs(x):
                break
        else:
            small = 0
        if k > 10000 or not cmath.isfinite(s2):
            break
    s2 *= half**n
    return (-s1 + 2 * cmath.log(half) * bessel_j(n, x) - s2) / math.pi


def _y01(x: complex) -> tuple[complex, complex]:
    a0 = _hankel_asym(0.0, x)
    a1 = _hankel_asym(1.0, x)
    if a0 is not None and a1 is not None:
        return (a0[0] - a0[1]) / 2j, (a1[0] - a1[1]) / 2j
    jm = _j_miller(0.0, int(abs(x)) + 40, x)
    lg = cmath.log(x / 2) + EULER_GAMMA
    k = np.arange(1, (len(jm) - 2) // 2 + 1)
    sgn = (-1.0) ** k
    y0 = 2 / math.pi * (lg * jm[0] - 2 * np.sum(sgn * jm[2 * k] / k))
    y1 = 2 / math.pi * (lg * jm[1] - jm[0] / x + np.sum(sgn * (jm[2 * k - 1] - jm[2 * k + 1]) / k))
    return complex(y0), complex(y1)


def _y_integer(n: int, x: complex) -> complex:
    if abs(x) - abs(x.imag) < _SERIES_LIMIT:
        return _y_integer_series(n, x)
    asym = _hankel_asym(n, x)
    if asym is not None:
        return (asym[0] - asym[1]) / 2j
    y0, y1 = _y01(x)
    _warn_recurrence(x, n)
    if n == 0:
        return y0
    for k in range(1, n):
        y0, y1 = y1, (2 * k / x) * y1 - y0
    return y1


def bessel_y(nu: float, x: complex) -> complex:
    """Bessel function of the second kind Y_nu(x), principal branch."""
    nu = float(nu)
    x = complex(x)
    if x == 0:
        raise ValueError("Y_nu is singular at x = 0")
    if _is_int(nu) and nu < 0:
        n = int(-nu)
        return (-1) ** n * bessel_y(n, x)
    if x.real < 0 and abs(x) - abs(x.imag) >= _SERIES_LIMIT:
        w, s = _reflect(x)
        return cmath.exp(-1j * s * math.pi * nu) * bessel_y(nu, w) + 2j * s * _sincospi(nu)[
            1
        ] * bessel_j(nu, w)
    if _is_int(nu):
        return _y_integer(int(nu), x)
    asym = _hankel_asym(nu, x)
    if asym is not None:
        return (asym[0] - asym[1]) / 2j
    s, c = _sincospi(nu)
    if c == 0:
        return -bessel_j(-nu, x) / s
    return (bessel_j(nu, x) * c - bessel_j(-nu, x)) / s


def _hankel(nu: float, x: complex, sign: int) -> complex:
    x = complex(x)
    asym = _hankel_asym(float(nu), x)
    if asym is not None:
        return asym[0] if sign > 0 else asym[1]
    j = bessel_j(nu, x)
    y = bessel_y(nu, x)
    h = j + sign * 1j * y
    if abs(h) * 1e4 < abs(j):
        warnings.warn(
            f"H{1 if sign > 0 else 2}_{nu}({x}) formed from J and Y with heavy cancellation",
            PrecisionWarning,
            stacklevel=3,
        )
    return h


def hankel1(nu: float, x: complex) -> complex:
    """Hankel function H^(1)_nu(x) = J + iY."""
    return _hankel(nu, x, 1)


def hankel2(nu: float, x: complex) -> complex:
    """Hankel function H^(2)_nu(x) = J - iY."""
    return _hankel(nu, x, -1)


def bessel(kind, order: float, arg: complex) -> complex:
    """Z^(j)_order(arg) for ``kind`` in {J, Y, H1, H2} (or 1..4).

    Raises
    ------
    ValueError
        For Y, H1 and H2 at ``arg == 0``.
    """
    kind = BesselKind.coerce(kind)
    if kind is BesselKind.J:
        return bessel_j(order, arg)
    if complex(arg) == 0:
        raise ValueError(f"{kind.name} is singular at arg = 0")
    if kind is BesselKind.Y:
        return bessel_y(order, arg)
    if kind is BesselKind.H1:
        return hankel1(order, arg)
    return hankel2(order, arg)


def bessel_sequence(kind, nu0: float, count: int, x: complex, step: int = 1) -> np.ndarray:
    """Z_{nu0 + step*k}(x) for k = 0..count-1 (step 1 or 2).

    J uses one backward-recurrence sweep when the ascending series is
    unreliable; Y uses forward recurrence, which is stable for it.
    """
    kind = BesselKind.coerce(kind)
    x = complex(x)
    nu0 = float(nu0)
    span = step * (count - 1) + 1
    out = np.empty(count, dtype=complex)
    if count == 0:
        return out
    if kind is BesselKind.J:
        neg_int = nu0 < 0 and _is_int(nu0)
        if x == 0 or neg_int or _use_series(nu0, x):
            for k in range(count):
                out[k] = bessel_j(nu0 + step * k, x)
            return out
        if x.real < 0:
            w, s = _reflect(x)
            orders = nu0 + step * np.arange(count)
            return np.exp(1j * s * np.pi * orders) * bessel_sequence(kind, nu0, count, w, step)
        return _j_block(nu0, span, x)[::step].copy()
    if x == 0:
        raise ValueError(f"{kind.name} is singular at arg = 0")
    y = np.empty(span, dtype=complex)
    _warn_recurrence(x, nu0 + span - 1)
    y[0] = bessel_y(nu0, x)
    if span > 1:
        y[1] = bessel_y(nu0 + 1, x)
    for k in range(1, span - 1):
        y[k + 1] = (2 * (nu0 + k) / x) * y[k] - y[k - 1]
    y = y[::step]
    if kind is BesselKind.Y:
        return y
    j = bessel_sequence(BesselKind.J, nu0, count, x, step)
    return j + 1j * y if kind is BesselKind.H1 else j - 1j * y


def bessel_j_reduced(nu: float, s: complex) -> complex:
    """J_nu(s) / (s/2)^nu, an even entire function of s.

    Finite at s = 0 where it equals 1/Gamma(nu+1); used to take limits of
    prefactor x Bessel products at singular points.
    """
    s = complex(s)
    lr = _log_rgamma(nu + 1.0)
    if abs(s) < 4 or (nu > 0 and abs(s) ** 2 / 4 <= nu + 1):
        if lr is None:
            raise ValueError("reduced J undefined for negative integer order")
        w = -(s * s) / 4
        term = 1.0 + 0j
        total = term
        k = 0
        while True:
            term *= w / ((k + 1) * (nu + k + 1))
            total += term
            k += 1
            if abs(term) <= SERIES_RTOL * abs(total) and k > -nu:
                break
        return lr[1] * math.exp(lr[0]) * total
    return bessel_j(nu, s) / (s / 2) ** nu


def bessel_j_scaled_sequence(nu0: float, count: int, x: complex, step: int = 2) -> np.ndarray:
    """J_{nu0 + step*k}(x) / (x/2)^nu0 for k = 0..count-1.

    Every entry is an entire function of x (even when step is even), so
    the sequence stays finite at x = 0 whatever the sign of nu0.
    """
    x = complex(x)
    out = np.empty(count, dtype=complex)
    if count == 0:
        return out
    if nu0 < 0 and _is_int(nu0):
        h = x / 2
        for k in range(count):
            out[k] = h ** (step * k) * bessel_j_reduced(nu0 + step * k, x) if h != 0 or k == 0 else 0j
        return out
    if abs(x) < _SERIES_LIMIT:
        # reduced functions R_nu = J_nu / (x/2)^nu obey R_{nu-1} = nu R_nu - (x/2)^2 R_{nu+1};
        # downward is the stable direction, so seed the top two orders by series
        h = x / 2
        h2 = h * h
        span = step * (count - 1)
        top = nu0 + span
        r = np.empty(span + 2, dtype=complex)
        if abs(x) >= 4 and not _is_int(top):
            # the series loses relative accuracy near a zero of J here; R is even in x
            xr = x if x.real >= 0 else -x
            seed = _j_block(top, 2, xr) / (xr / 2) ** np.array([top, top + 1])
            r[span], r[span + 1] = seed
        else:
            r[span + 1] = bessel_j_reduced(top + 1, x)
            r[span] = bessel_j_reduced(top, x)
        for k in range(span, 0, -1):
            r[k - 1] = (nu0 + k) * r[k] - h2 * r[k + 1]
        powers = h ** (step * np.arange(count)) if h != 0 else (np.arange(count) == 0).astype(complex)
        return powers * r[: span + 1 : step]
    return bessel_sequence(BesselKind.J, nu0, count, x, step) / (x / 2) ** nu0


def bessel_ratio(kind, nu: float, x: complex, n_up: int) -> np.ndarray:
    """Ratios Z_{nu+k+1}(x) / Z_{nu+k}(x) for k = 0..n_up-1.

    Works in ratio space, so orders far past overflow of Z itself are fine.
    J ratios come from the minimal-solution continued fraction (backward);
    Y/H ratios from forward recurrence.
    """
    kind = BesselKind.coerce(kind)
    x = complex(x)
    if kind is BesselKind.J:
        kmax = n_up + 40 + int(abs(x))
        r = 0j
        out = np.empty(kmax, dtype=complex)
        for k in range(kmax - 1, -1, -1):
            # r_k = J_{nu+k+1}/J_{nu+k} = 1 / (2(nu+k+1)/x - r_{k+1})
            r = 1.0 / (2 * (nu + k + 1) / x - r)
            out[k] = r
        return out[:n_up]
    # climb from a low order so that Z_nu itself never has to be formed
    base = nu - math.floor(nu) if nu > 2 else nu
    r = bessel(kind, base + 1, x) / bessel(kind, base, x)
    for k in range(int(round(nu - base))):
        r = 2 * (base + k + 1) / x - 1.0 / r
    out = np.empty(n_up, dtype=complex)
    for k in range(n_up):
        out[k] = r
        r = 2 * (nu + k + 1) / x - 1.0 / r
    return out


# ---------------------------------------------------------------------------
# Half-odd-integer order: elementary closed forms
# ---------------------------------------------------------------------------


def _sph_j_table(mmax: int, x: np.ndarray) -> np.ndarray:
    """Spherical j_m(x), m = 0..mmax, shape (mmax+1, len(x)); x != 0."""
    x = np.asarray(x, dtype=complex)
    out = np.empty((mmax + 1, x.size), dtype=complex)
    sx, cx = np.sin(x), np.cos(x)
    j0 = sx / x
    j1 = sx / x**2 - cx / x
    fwd = np.abs(x) > mmax
    if fwd.any():
        xf = x[fwd]
        a, b = j0[fwd], j1[fwd]
        out[0, fwd] = a
        if mmax >= 1:
            out[1, fwd] = b
        for m in range(1, mmax):
            a, b = b, (2 * m + 1) / xf * b - a
            out[m + 1, fwd] = b
    back = ~fwd
    if back.any():
        xb = x[back]
        amax = float(np.max(np.abs(xb)))
        start = mmax + 40 + int(amax) + int(10 * amax ** (1 / 3))
        f = np.zeros((start + 2, xb.size), dtype=complex)
        f[start] = 1e-300
        for m in range(start, 0, -1):
            f[m - 1] = (2 * m + 1) / xb * f[m] - f[m + 1]
            big = np.abs(f[m - 1]) > _RESCALE
            if big.any():
                f[m - 1 :, big] /= _RESCALE
        keep = f[: mmax + 1]
        if mmax >= 1:
            use0 = np.abs(j0[back]) >= np.abs(j1[back])
            scale = np.where(use0, j0[back] / f[0], j1[back] / f[1])
        else:
            scale = j0[back] / f[0]
        out[:, back] = keep * scale
    return out


def _sph_y_table(mmax: int, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    out = np.empty((mmax + 1, x.size), dtype=complex)
    a = -np.cos(x) / x
    out[0] = a
    if mmax >= 1:
        b = -np.cos(x) / x**2 - np.sin(x) / x
        out[1] = b
        for m in range(1, mmax):
            a, b = b, (2 * m + 1) / x * b - a
            out[m + 1] = b
    return out


def half_integer_j_table(k_lo: int, k_hi: int, x) -> np.ndarray:
    """J_{k+1/2}(x) for k = k_lo..k_hi, vectorised over x.

    Returns shape (k_hi - k_lo + 1, len(x)). Positive orders come from the
    spherical j_m (forward recurrence where m < |x|, Miller otherwise),
    negative ones from J_{-m-1/2} = (-1)^(m+1) Y_{m+1/2}.
    """
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any(x == 0):
        raise ValueError("half_integer_j_table needs x != 0")
    root = np.sqrt(2 * x / np.pi)
    out = np.empty((k_hi - k_lo + 1, x.size), dtype=complex)
    if k_hi >= 0:
        jt = _sph_j_table(k_hi, x)
    if k_lo < 0:
        yt = _sph_y_table(-k_lo - 1, x)
    for i, k in enumerate(range(k_lo, k_hi + 1)):
        if k >= 0:
            out[i] = root * jt[k]
        else:
            m = -k - 1
            out[i] = (-1) ** (m + 1) * root * yt[m]
    return out


def bessel_half_integer(order: float, arg: complex) -> complex:
    """J_order(arg) for order = +-(m + 1/2) from elementary functions.

    Raises
    ------
    ValueError
        If ``order`` is not half an odd integer, or at ``arg == 0`` for a
        negative order.
    """
    k = order - 0.5
    if not _is_int(k):
        raise ValueError(f"order {order} is not half an odd integer")
    k = int(k)
    arg = complex(arg)
    if arg == 0:
        if k < 0:
            raise ValueError("negative half-integer order is singular at arg = 0")
        return 0j
    return complex(half_integer_j_table(k, k, [arg])[0, 0])


# ---------------------------------------------------------------------------
# Orthogonal polynomials and hypergeometric sums
# ---------------------------------------------------------------------------


def jacobi_table(nmax: int, a: float, b: float, x) -> np.ndarray:
    """P_n^(a,b)(x) for n = 0..nmax, shape (nmax+1,) + shape(x)."""
    if nmax < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2) * x
    for k in range(1, nmax):
        s = 2 * k + a + b
        c1 = 2 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = s * (s + 1) * (s + 2)
        c4 = 2 * (k + a) * (k + b) * (s + 2)
        out[k + 1] = ((c2 + c3 * x) * out[k] - c4 * out[k - 1]) / c1
    return out


def jacobi_poly(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence in n."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    p = jacobi_table(n, a, b, x)[n]
    return p[()] if p.ndim == 0 else p


def assoc_legendre(n: int, k: int, x):
    """Associated Legendre function P_n^k(x), |x| <= 1, Condon-Shortley phase."""
    if k < 0 or n < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise ValueError("assoc_legendre needs |x| <= 1")
    s = np.sqrt((1 - x) * (1 + x))
    pmm = np.ones_like(x)
    for i in range(1, k + 1):
        pmm = -pmm * (2 * i - 1) * s
    if n == k:
        return pmm[()] if pmm.ndim == 0 else pmm
    p_prev, p = pmm, x * (2 * k + 1) * pmm
    for ell in range(k + 1, n):
        p_prev, p = p, ((2 * ell + 1) * x * p - (ell + k) * p_prev) / (ell - k + 1)
    return p[()] if p.ndim == 0 else p


def hypergeom_terminating(n: int, b, c, x):
    """The degree-n polynomial 2F1(-n, b; c; x).

    Exact when ``b``, ``c`` and ``x`` are ``Fraction``/int; float otherwise.

    Raises
    ------
    ValueError
        If c is one of 0, -1, ..., -(n-1), so a denominator vanishes
        before the sum terminates.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if float(c) <= 0 and float(c).is_integer() and -float(c) < n:
        raise ValueError(f"2F1(-{n}, b; c; x) undefined for c = {c}")
    exact = all(isinstance(v, (int, Fraction)) for v in (b, c, x))
    one = Fraction(1) if exact else 1.0
    term = one
    total = one
    for k in range(n):
        term = term * (k - n) * (b + k) / ((c + k) * (k + 1)) * x
        total = total + term
    return total
