"""Seeded verification suite: every closed form against its oracle.

``run_suite`` draws reproducible random points covering all three zones,
adds a fixed set of limit and table checks, and aggregates the resulting
:class:`~qdirac.oracle.OracleReport` objects into a JSON-ready dict.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext

import numpy as np

from . import __version__, oracle, stepsolve
from .errors import ConsistencyError, DegeneracyError, DomainError
from .oracle import OracleReport, compare
from .stepsolve import Kinematics, StepPotential, Zone

TOL_QSQ = 1e-9
TOL_COEFF = 1e-8
TOL_RESIDUAL = 1e-10
TOL_FD = 1e-6
TOL_IDENTITY = 1e-12
ORDER_BAND = (1.8, 2.2)
FD_ORDER_H = 1e-2
FD_RICHARDSON_H = 1e-3
FD_MIN_DISTANCE = 1e-3
FD_NOISE_FLOOR = 1e-11  # rounding in the oracle momenta, divided by h at use

CIRCLE_TABLE = (
    (0.05, 0.32, 0.10),
    (0.31, 0.73, 0.50),
    (0.75, 0.97, 1.00),
    (1.31, 0.95, 1.50),
    (1.71, 0.70, 1.80),
    (1.93, 0.38, 1.95),
)


def sample_points(seed: int, n_points: int, m: float = 1.0):
    """``(E, V0, |W0|, arg W0, z)`` tuples with E in (m, 5m], V0, |W0| in [0, 3m]."""
    rng = np.random.default_rng(seed)
    E = m + (4.0 * m) * (1.0 - rng.random(n_points))
    V0 = 3.0 * m * rng.random(n_points)
    W = 3.0 * m * rng.random(n_points)
    arg = 2.0 * math.pi * rng.random(n_points)
    z = rng.random(n_points) / m
    return [tuple(float(a) for a in row) for row in zip(E, V0, W, arg, z)]


def _bool_report(name, analytic, observed, **context):
    ok = analytic == observed
    return OracleReport(name, analytic, observed, 0.0 if ok else 1.0, 0.0 if ok else 1.0, 0.0, ok, context)


def check_point(E, V0, w_abs, w_arg, z, m=1.0):
    """All oracle checks at one parameter point; returns ``(reports, skipped)``."""
    k = Kinematics(E, m)
    pot = StepPotential.polar(V0, w_abs, w_arg)
    ctx = {"E": E, "V0": V0, "w_abs": w_abs, "w_arg": w_arg}
    reports: list[OracleReport] = []
    skipped: list[str] = []

    zc = stepsolve.classify_zone(k, pot)
    if zc.zone is Zone.BOUNDARY:
        return reports, ["boundary"]

    mom = stepsolve.momenta(k, pot)
    try:
        s_minus, s_plus = oracle.det_roots_Qsq(k, pot)
    except ConsistencyError:
        return [_bool_report("det_roots.perfect_square", True, False, **ctx)], skipped
    reports.append(compare("det_roots.Q_minus_sq", mom.Q_minus_sq, s_minus, TOL_QSQ, m * m, **ctx))
    reports.append(compare("det_roots.Q_plus_sq", mom.Q_plus_sq, s_plus, TOL_QSQ, m * m, **ctx))
    reports.append(_bool_report("zone.sign_consistency", zc.zone is Zone.EVANESCENT, s_minus < 0, **ctx))

    try:
        coef = stepsolve.coefficients(k, pot)
    except DegeneracyError:
        coef = None
        skipped.append("coefficients.degenerate")
    if coef is not None:
        for branch in ("minus", "plus"):
            analytic = ((coef.A_minus, coef.M_minus, coef.N_minus) if branch == "minus"
                        else (coef.A_plus, coef.M_plus, coef.N_plus))
            for spin in ("up", "down"):
                try:
                    num = oracle.nullspace_coeffs(k, pot, branch, spin)
                except (DegeneracyError, np.linalg.LinAlgError):
                    skipped.append("nullspace.degenerate")
                    continue
                for label, a, o, floor in zip("AMN", analytic, (num.A, num.M, num.N), (1.0, 1 / m, 1 / m)):
                    reports.append(compare(f"nullspace.{label}_{branch}", a, o, TOL_COEFF, floor,
                                           spin=spin, **ctx))
        for branch, build, Q in (("minus", stepsolve.psi_minus, mom.Q_minus),
                                 ("plus", stepsolve.psi_plus, mom.Q_plus)):
            for spin in ("up", "down"):
                res = oracle.residual_norm(build(z, spin, k, pot), Q, k, pot)
                reports.append(OracleReport(f"residual.psi_{branch}", 0.0, res, res, res, TOL_RESIDUAL,
                                            res < TOL_RESIDUAL, dict(spin=spin, z=z, **ctx)))

    for branch in ("minus", "plus"):
        if branch == "minus" and mom.Q_minus_sq <= 0:
            continue
        dist = _branch_point_distance(k, zc, branch)
        if dist < FD_MIN_DISTANCE:
            skipped.append(f"fd_velocity.{branch}.near_branch_point")
            continue
        try:
            v = stepsolve.velocity(k, pot, branch)
            v_fd = oracle.richardson_velocity(k, pot, branch, min(FD_RICHARDSON_H, dist / 50.0))
        except (DomainError, DegeneracyError):
            skipped.append(f"fd_velocity.{branch}")
            continue
        reports.append(compare(f"fd_velocity.v_{branch}", v, v_fd, TOL_FD, 0.0, **ctx))
        h = min(FD_ORDER_H, dist / 20.0)
        try:
            e1 = abs(oracle.fd_velocity(k, pot, branch, h) - v)
            e2 = abs(oracle.fd_velocity(k, pot, branch, h / 2) - v)
        except (DomainError, DegeneracyError):
            skipped.append(f"fd_order.{branch}")
            continue
        if min(e1, e2) < FD_NOISE_FLOOR / h:
            skipped.append(f"fd_order.{branch}")
            continue
        order = math.log2(e1 / e2)
        ok = ORDER_BAND[0] <= order <= ORDER_BAND[1]
        reports.append(OracleReport(f"fd_order.v_{branch}", 2.0, order, abs(order - 2.0),
                                    abs(order - 2.0) / 2.0, 0.1, ok, ctx))
    return reports, skipped


def _branch_point_distance(k: Kinematics, zc, branch: str) -> float:
    """Distance (units of m) from E to the nearest square-root branch point of Q(E).

    Both momenta branch at the mass threshold; Q- also at the zone edges.
    Finite differences only reach their asymptotic regime for steps much
    smaller than this distance.
    """
    edges = [k.m]
    if branch == "minus":
        edges += [zc.upper] + ([zc.lower] if zc.lower > k.m else [])
    return min(abs(k.E - e) for e in edges) / k.m


def _check_point_star(args):
    point, fault = args
    with stepsolve.inject_fault(fault) if fault else nullcontext():
        return check_point(*point)


def fixed_checks(m: float = 1.0) -> list[OracleReport]:
    """Table, limit and identity checks that do not depend on the seed."""
    out = []
    for V, _, dE in CIRCLE_TABLE:
        Vm = V * m
        W = stepsolve.circle_w0(Vm, m)
        got = stepsolve.tunneling_range(StepPotential(Vm, W), m)
        out.append(compare("circle.identity", got, stepsolve.tunneling_range_circle(Vm, m), TOL_IDENTITY, m, V0=V))
        out.append(OracleReport("circle.table_delta_E", dE, got / m, abs(got / m - dE), abs(got / m - dE),
                                0.005, abs(got / m - dE) <= 0.005, {"V0": V}))
    for V in (0.5, 1.5, 3.0, 10.0):
        got = stepsolve.tunneling_range(StepPotential(V * m, 0), m)
        out.append(compare("complex_limit.delta_E", got, min(V, 2.0) * m, TOL_IDENTITY, m, V0=V))
    k = Kinematics(2.0 * m, m)
    for w in (0.1, 0.5, 1.0, 1.5):
        v = stepsolve.velocity(k, StepPotential(0.0, w * m), "minus")
        out.append(compare("free_propagation.v_minus_sq", v * v, 0.75, TOL_IDENTITY, 1.0, w_abs=w))
    rng = np.random.default_rng(12345)
    for _ in range(20):
        V = 3.0 * rng.random()
        E = V + 1.0 + 4.0 * rng.random() + 1e-3
        kk = Kinematics(E * m, m)
        lhs = stepsolve.velocity(kk, StepPotential(-V * m, 0), "minus")
        rhs = stepsolve.velocity(kk, StepPotential(V * m, 0), "plus")
        out.append(compare("complex_limit.velocity_identity", lhs, rhs, TOL_IDENTITY, 0.0, E=E, V0=V))
    # N+ numerator: A+ must solve the equation, the printed A- variant must not
    kt, pt = Kinematics(2.0 * m, m), StepPotential(0.7 * m, 0.4 * m)
    Qp = stepsolve.momenta(kt, pt).Q_plus
    good = oracle.residual_norm(stepsolve.psi_plus(0.0, "up", kt, pt), Qp, kt, pt)
    bad = oracle.residual_norm(stepsolve.psi_plus(0.0, "up", kt, pt, _n_plus_uses_a_minus=True), Qp, kt, pt)
    out.append(OracleReport("typo.n_plus_numerator", good, bad, bad, bad, TOL_RESIDUAL,
                            good < TOL_RESIDUAL and bad > 1e3 * TOL_RESIDUAL, {}))
    V = 0.01
    v = stepsolve.velocity(k, StepPotential(V * m, 100 * V * m), "plus")
    pE = k.p / k.E
    out.append(OracleReport("limit.v_plus_free", pE, v, abs(v - pE), abs(v - pE) / pE, 0.02,
                            abs(v - pE) / pE < 0.02, {"V0": V, "w_abs": 100 * V}))
    return out


def run_suite(seed: int = 0, n_points: int = 1000, workers: int = 1, fault: str | None = None) -> dict:
    points = sample_points(seed, n_points)
    jobs = [(p, fault) for p in points]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_point_star, jobs, chunksize=max(1, n_points // (4 * workers))))
    else:
        results = [_check_point_star(j) for j in jobs]
    with stepsolve.inject_fault(fault) if fault else nullcontext():
        reports = fixed_checks()
    skipped: dict[str, int] = {}
    for point_reports, point_skips in results:
        reports.extend(point_reports)
        for s in point_skips:
            skipped[s] = skipped.get(s, 0) + 1

    summary: dict[str, dict] = {}
    for r in reports:
        entry = summary.setdefault(r.check_name, {"n": 0, "failed": 0, "max_rel_error": 0.0, "tolerance": r.tolerance})
        entry["n"] += 1
        entry["failed"] += 0 if r.passed else 1
        entry["max_rel_error"] = max(entry["max_rel_error"], r.rel_error)
    failures = [r.to_dict() for r in reports if not r.passed]
    return {
        "metadata": {"version": __version__, "seed": seed, "n_points": n_points},
        "passed": not failures,
        "n_checks": len(reports),
        "summary": dict(sorted(summary.items())),
        "skipped": dict(sorted(skipped.items())),
        "failures": failures,
    }
