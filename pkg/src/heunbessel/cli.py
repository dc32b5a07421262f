"""Command-line front end: ``heunbessel qes|dipole|mathieu``.

Spectra and sampled functions go to stdout as JSON (default) or CSV;
diagnostics go to stderr.  Exit status 2 means bad arguments, 3 means a
solver did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import warnings

import numpy as np

from . import dipole, inverted, mathieu, spectral
from .errors import ConvergenceError, HeunBesselError, ToleranceError

SCHEMA = 1
_GRID_FLAGS = ("--functions", "--theta", "--eval", "--infinite")


class UsageError(Exception):
    pass


def _num(x) -> float | None:
    """15 significant digits, round-trip safe."""
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.15g}")


def _fmt(x) -> str:
    return f"{float(x):.15g}"


_PI_TERM = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d*\.?\d+))?$")


def parse_value(text: str) -> float:
    """A float, or a multiple/fraction of pi such as ``pi``, ``-2pi``, ``pi/2``, ``3*pi/4``."""
    t = text.strip().lower()
    m = _PI_TERM.match(t)
    if m:
        sign, coef, den = m.groups()
        v = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
        return -v if sign == "-" else v
    try:
        return float(t)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a number") from None


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:npoints`` (both ends included)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} must look like start:stop:npoints")
    start, stop = parse_value(parts[0]), parse_value(parts[1])
    try:
        n = int(parts[2])
    except ValueError:
        raise UsageError(f"grid point count {parts[2]!r} is not an integer") from None
    if n < 1:
        raise UsageError("grid needs at least one point")
    return np.linspace(start, stop, n)


def parse_window(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"window {text!r} must look like lo:hi")
    lo, hi = (parse_value(p) for p in parts)
    if not lo < hi:
        raise UsageError("window needs lo < hi")
    return lo, hi


# ---------------------------------------------------------------------------


def _entry(value, residual, method, truncation, **extra):
    d = {"value": _num(value), "residual": _num(residual), "method": method, "truncation": int(truncation)}
    d.update(extra)
    return d


def _spectrum_entries(spec: spectral.Spectrum):
    return [_entry(v, r, spec.method, spec.truncation) for v, r in zip(spec.values, spec.residuals)]


def cmd_qes(args) -> dict:
    if not args.b > 0:
        raise UsageError("--b must be positive")
    if args.l < 1:
        raise UsageError("--l must be >= 1")
    prob = inverted.InvPotProblem(args.b, args.l)
    res = inverted.qes_spectrum(prob)
    rep = res.degeneracy_report
    spectrum = []
    for n, E in enumerate(res.energies):
        spectrum.append(
            _entry(
                E,
                res.even_spectrum.residuals[n],
                "finite-series",
                prob.l,
                odd_value=_num(prob.energy(res.odd_spectrum.values[n])),
            )
        )
    out = {
        "schema": SCHEMA,
        "problem": {"name": "qes", "b": _num(args.b), "l": args.l},
        "spectrum": spectrum,
        "degeneracy": {
            "detA": _num(rep["detA"]),
            "detB": _num(rep["detB"]),
            "match": bool(rep["match"]),
            "levels_match": [
                bool(abs(a - prob.energy(b)) <= 1e-8 * max(1.0, abs(a)))
                for a, b in zip(res.energies, res.odd_spectrum.values)
            ],
        },
    }
    if args.infinite:
        roots = inverted.infinite_spectrum(prob, window=parse_window(args.infinite))
        out["infinite"] = [_entry(E, r, "continued-fraction", N, parity=par) for E, par, r, N in roots]
    if args.functions:
        u = parse_grid(args.functions)
        cols = {"u": u}
        for n, E in enumerate(res.energies):
            cols[f"psi_e_{n}"] = inverted.sample(inverted.finite_eigenfunction(prob, E, "even", u))
            cols[f"psi_o_{n}"] = inverted.sample(inverted.finite_eigenfunction(prob, E, "odd", u))
        out["samples"] = cols
    return out


def cmd_dipole(args) -> dict:
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    if args.beta < 0:
        raise UsageError("--beta must be >= 0")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    prob = dipole.DipoleProblem(args.m, args.beta)
    spec = dipole.angular_eigenvalues(prob, args.count)
    out = {
        "schema": SCHEMA,
        "problem": {"name": "dipole", "m": args.m, "beta": _num(args.beta)},
        "spectrum": _spectrum_entries(spec),
    }
    if args.theta:
        t = parse_grid(args.theta)
        cols = {"theta": t}
        for n, C in enumerate(spec.values):
            if args.rep == "jacobi" or args.beta == 0:
                vals = dipole.theta_jacobi(prob, C, t)
            else:
                vals = dipole.theta_bessel(prob, C, t, "theta2")
            cols[f"theta_{n}"] = vals
        out["samples"] = cols
        out["representation"] = "jacobi" if args.rep == "jacobi" or args.beta == 0 else "bessel"
    return out


def cmd_mathieu(args) -> dict:
    if args.k == 0:
        raise UsageError("--k must be nonzero (q = k^2 = 0 is degenerate)")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    spec = mathieu.characteristic_values(args.k, args.count)
    prob = mathieu.MathieuProblem(args.k, "modified" if args.modified else "real")
    rec = mathieu.recurrence(prob)
    entries = []
    for v, r in zip(spec.values, spec.residuals):
        deeper = spectral.polish_root(rec, float(v), depth=2 * max(60, spec.truncation))
        entries.append(_entry(v, r, spec.method, spec.truncation, depth_doubling_shift=_num(abs(deeper - v))))
    out = {
        "schema": SCHEMA,
        "problem": {"name": "mathieu", "k": _num(args.k), "q": _num(args.k**2), "sigma": prob.sigma},
        "spectrum": entries,
    }
    if args.eval:
        u = parse_grid(args.eval)
        cols = {"u": u}
        for n, a in enumerate(spec.values):
            cols[f"w1_{n}"] = mathieu.solution(prob, a, "w1", "J", u)
        out["samples"] = cols
        dom = mathieu.solution_domain(prob, "w1", "J")
        y2 = mathieu.solution_domain(prob, "w1", "Y")
        if prob.modified:
            note = "|cos(iu)| = cosh u >= 1 for every u, so Y/Hankel w1 series converge on all u"
        else:
            note = "Y/Hankel w1 series need |cos u| >= 1"
        out["domain"] = {"variable": "z = cos^2(sigma u)", "J": dom.describe(), "Y_H": y2.describe(), "note": note}
    return out


# ---------------------------------------------------------------------------


def _to_csv(out: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "samples" in out:
        cols = out["samples"]
        keys = list(cols)
        w.writerow(keys)
        for row in zip(*(cols[k] for k in keys)):
            w.writerow([_fmt(x) for x in row])
    else:
        w.writerow(["index", "value", "residual", "method", "truncation"])
        for n, e in enumerate(out["spectrum"]):
            w.writerow([n, _fmt(e["value"]), _fmt(e["residual"]), e["method"], e["truncation"]])
    return buf.getvalue()


def _to_json(out: dict) -> str:
    if "samples" in out:
        out = dict(out)
        out["samples"] = {k: [_num(x) for x in v] for k, v in out["samples"].items()}
    return json.dumps(out, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heunbessel", description="Bessel-series spectra and eigenfunctions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")

    q = sub.add_parser("qes", help="inverted potential: algebraic levels, optional infinite-series levels")
    q.add_argument("--b", type=float, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--infinite", metavar="LO:HI", help="also list infinite-series levels in this window")
    q.add_argument("--functions", metavar="GRID", help="sample psi on start:stop:npoints")
    fmt(q)
    q.set_defaults(run=cmd_qes)

    d = sub.add_parser("dipole", help="point-dipole angular separation constants")
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--beta", type=float, required=True)
    d.add_argument("--count", type=int, default=3)
    d.add_argument("--theta", metavar="GRID", help="sample Theta on start:stop:npoints")
    d.add_argument("--rep", choices=("bessel", "jacobi"), default="bessel")
    fmt(d)
    d.set_defaults(run=cmd_dipole)

    m = sub.add_parser("mathieu", help="Mathieu characteristic values and w1 samples")
    m.add_argument("--k", type=float, required=True)
    m.add_argument("--count", type=int, default=4)
    m.add_argument("--modified", action="store_true")
    m.add_argument("--eval", metavar="GRID", help="sample w1 on start:stop:npoints")
    fmt(m)
    m.set_defaults(run=cmd_mathieu)
    return ap


def _glue_grids(argv: list[str]) -> list[str]:
    # "--functions -6:6:400" would read -6:6:400 as an option
    out, it = [], iter(argv)
    for a in it:
        if a in _GRID_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_grids(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out = args.run(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except UsageError as e:
        print(f"heunbessel: error: {e}", file=sys.stderr)
        return 2
    except (ConvergenceError, ToleranceError) as e:
        print(f"heunbessel: solver did not converge: {e}", file=sys.stderr)
        return 3
    except (ValueError, HeunBesselError) as e:
        print(f"heunbessel: error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(_to_csv(out) if args.format == "csv" else _to_json(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
