"""Command-line front end.

Subcommands: ``point``, ``scan``, ``spinor``, ``tunneling``, ``verify``.
Exit codes: 0 ok, 1 usage/domain, 2 numerical degeneracy, 3 I/O,
4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, kernels, oracle, stepsolve
from .errors import DegeneracyError, DomainError
from .stepsolve import Kinematics, StepPotential

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cplx(z):
    z = complex(z)
    return [z.real, z.imag]


def _range(text):
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}")
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise argparse.ArgumentTypeError(f"range must satisfy a < b, got {text!r}")
    return a, b


def _grid(text):
    try:
        nx, ny = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NXxNY, got {text!r}")
    if nx < 2 or ny < 2:
        raise argparse.ArgumentTypeError("grid counts must be >= 2")
    return nx, ny


def _physics_args(p, energy=True):
    if energy:
        p.add_argument("--energy", type=float, required=True, help="incoming energy E")
    p.add_argument("--v0", type=float, required=True, help="complex potential V0 (>= 0)")
    p.add_argument("--w0-abs", type=float, default=0.0, help="|W0| of the pure quaternionic potential")
    p.add_argument("--w0-arg", type=float, default=0.0, help="arg W0 in radians")
    p.add_argument("--mass", type=float, default=1.0, help="particle mass m")


def _point_inputs(args):
    if not args.mass > 0:
        raise UsageError("--mass must be positive")
    if args.v0 < 0:
        raise UsageError("--v0 must be >= 0")
    if args.w0_abs < 0:
        raise UsageError("--w0-abs must be >= 0")
    if not args.energy > args.mass:
        raise UsageError("--energy must exceed --mass")
    return Kinematics(args.energy, args.mass), StepPotential.polar(args.v0, args.w0_abs, args.w0_arg)


def _emit(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def point_report(k: Kinematics, pot: StepPotential, tol: float = stepsolve.BOUNDARY_TOL) -> dict:
    """Everything known in closed form at one point.  Raises DegeneracyError
    when the spinor coefficients are singular."""
    mom = stepsolve.momenta(k, pot)
    zc = stepsolve.classify_zone(k, pot, tol)
    velocities = {}
    for branch in ("minus", "plus"):
        try:
            velocities[f"v_{branch}"] = stepsolve.velocity(k, pot, branch)
        except DomainError:
            velocities[f"v_{branch}"] = None
    coef = stepsolve.coefficients(k, pot)
    return {
        "inputs": {"E": k.E, "m": k.m, "V0": pot.V0, "W0": _cplx(pot.W0)},
        "delta": mom.delta,
        "q_minus_sq": mom.q_minus_sq,
        "q_plus_sq": mom.q_plus_sq,
        "Q_minus_sq": mom.Q_minus_sq,
        "Q_plus_sq": mom.Q_plus_sq,
        "Q_minus": _cplx(mom.Q_minus),
        "Q_plus": _cplx(mom.Q_plus),
        "zone": zc.zone.value,
        "lower_boundary": zc.lower,
        "upper_boundary": zc.upper,
        "tunneling_range": stepsolve.tunneling_range(pot, k.m),
        **velocities,
        "coefficients": {name: _cplx(getattr(coef, name)) for name in
                         ("A_minus", "A_plus", "M_minus", "M_plus", "N_minus", "N_plus")},
    }


def cmd_point(args):
    k, pot = _point_inputs(args)
    _emit(point_report(k, pot, args.tol), args.output)
    return EXIT_OK


def cmd_tunneling(args):
    if not args.mass > 0 or args.v0 < 0 or args.w0_abs < 0:
        raise UsageError("need --mass > 0, --v0 >= 0, --w0-abs >= 0")
    pot = StepPotential.polar(args.v0, args.w0_abs, args.w0_arg)
    m = args.mass
    lower, upper = stepsolve.zone_boundaries(pot, m)
    inside = args.w0_abs ** 2 + (args.v0 - m) ** 2 <= m * m
    _emit({
        "inputs": {"m": m, "V0": pot.V0, "w_abs": pot.w_abs},
        "tunneling_range": upper - lower,
        "lower_boundary": lower,
        "upper_boundary": upper,
        "region": "inside" if inside else "outside",
    }, args.output)
    return EXIT_OK


def cmd_spinor(args):
    k, pot = _point_inputs(args)
    build = stepsolve.psi_minus if args.branch == "minus" else stepsolve.psi_plus
    psi = build(args.z, args.spin, k, pot)
    Q = stepsolve.branch_momentum(k, pot, args.branch)
    _emit({
        "inputs": {"E": k.E, "m": k.m, "V0": pot.V0, "W0": _cplx(pot.W0),
                   "branch": args.branch, "spin": args.spin, "z": args.z},
        "Q": _cplx(Q),
        "u": [_cplx(c) for c in psi.u],
        "w": [_cplx(c) for c in psi.w],
        "residual": oracle.residual_norm(psi, Q, k, pot),
    }, args.output)
    return EXIT_OK


def scan_rows(quantity: str, nx: int, ny: int, xrange, yrange, energy: float = 2.0, mass: float = 1.0,
              tol: float = stepsolve.BOUNDARY_TOL, backend=None):
    """Grid rows ``(V0/m, |W0|/m, value, zone)`` ordered V0-major.

    Ranges and energy are in units of m.  For ``v_minus_sq`` evanescent
    cells carry the sentinel -1; undefined velocities are NaN.
    """
    if not mass > 0:
        raise UsageError("--mass must be positive")
    if not energy > 1.0:
        raise UsageError("--energy must exceed 1 (units of m)")
    if xrange[0] < 0 or yrange[0] < 0:
        raise UsageError("V0 and |W0| ranges must be non-negative")
    xs = np.linspace(xrange[0], xrange[1], nx)
    ys = np.linspace(yrange[0], yrange[1], ny)
    values, zones = kernels.scan_grid(xs * mass, ys * mass, energy * mass, mass, quantity, tol, backend)
    if quantity == "tunneling_range":
        values = values / mass
    rows = []
    for i in range(nx):
        for j in range(ny):
            rows.append((float(xs[i]), float(ys[j]), float(values[i, j]), kernels.ZONE_LABELS[zones[i, j]]))
    return rows


def _fmt(x: float) -> str:
    return repr(x) if math.isfinite(x) else "nan"


def render_scan(rows, fmt: str, metadata: dict) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["v0_over_m", "w0_over_m", "value", "zone"])
        for v0, w0, value, zone in rows:
            writer.writerow([_fmt(v0), _fmt(w0), _fmt(value), zone])
        return buf.getvalue()
    payload = {
        "metadata": metadata,
        "rows": [{"v0": v0, "w0": w0, "value": value if math.isfinite(value) else None, "zone": zone}
                 for v0, w0, value, zone in rows],
    }
    return json.dumps(payload, indent=1) + "\n"


def cmd_scan(args):
    nx, ny = args.grid
    if args.backend != "auto" and args.backend not in kernels.available_backends():
        raise UsageError(f"backend {args.backend!r} is not available in this build")
    rows = scan_rows(args.quantity, nx, ny, args.xrange, args.yrange, args.energy, args.mass, args.tol,
                     None if args.backend == "auto" else args.backend)
    metadata = {
        "version": __version__,
        "seed": None,
        "scan": {"quantity": args.quantity, "grid": [nx, ny], "xrange": list(args.xrange),
                 "yrange": list(args.yrange), "energy_over_m": args.energy, "mass": args.mass,
                 "tol": args.tol},
    }
    text = render_scan(rows, args.format, metadata)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_verify(args):
    from .suite import run_suite

    if args.n_points < 0:
        raise UsageError("--n-points must be >= 0")
    report = run_suite(args.seed, args.n_points, workers=args.workers, fault=args.inject_fault)
    _emit(report, args.output)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdirac", description=__doc__.splitlines()[0],
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = dict(formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    p = sub.add_parser("point", help="closed-form report at one kinematic point", **common)
    _physics_args(p)
    p.add_argument("--tol", type=float, default=stepsolve.BOUNDARY_TOL, help="zone boundary tolerance")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("tunneling", help="width of the evanescent energy window", **common)
    _physics_args(p, energy=False)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_tunneling)

    p = sub.add_parser("spinor", help="explicit quaternionic spinor and its residual", **common)
    _physics_args(p)
    p.add_argument("--branch", choices=("plus", "minus"), default="minus")
    p.add_argument("--spin", choices=("up", "down"), default="up")
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_spinor)

    p = sub.add_parser("scan", help="evaluate a quantity on a (V0, |W0|) grid", **common)
    p.add_argument("--quantity", choices=kernels.QUANTITIES, default="tunneling_range")
    p.add_argument("--grid", type=_grid, default=(201, 201), help="NXxNY")
    p.add_argument("--xrange", type=_range, default=(0.0, 2.0), help="V0/m range a:b")
    p.add_argument("--yrange", type=_range, default=(0.0, 2.0), help="|W0|/m range a:b")
    p.add_argument("--energy", type=float, default=2.0, help="E in units of m")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=stepsolve.BOUNDARY_TOL)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.add_argument("--backend", choices=("auto", "cython", "python"), default="auto")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the oracle suite", **common)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-points", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default="-")
    p.add_argument("--inject-fault", choices=("flip_delta",), default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"qdirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"qdirac: degenerate point: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"qdirac: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
