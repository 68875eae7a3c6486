"""Independent numerical checks of the closed forms in :mod:`qdirac.stepsolve`.

Nothing here calls the formula it is checking.  The only shared pieces are
the matrix constructors of :mod:`qdirac.dirac`:

* squared momenta come from interpolating ``det(M+ M- - |W0|^2)`` as a
  polynomial in ``s = Q^2`` and taking the square root of that polynomial;
* spinor coefficients come from an SVD null space plus a linear solve of
  the coupled complex equations;
* group velocities come from central differences of the oracle momenta.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from . import dirac
from .errors import ConsistencyError, DegeneracyError, DomainError
from .stepsolve import Kinematics, StepPotential

NULLSPACE_RTOL = 1e-8
SQUARE_RTOL = 1e-9
DEFAULT_H = 1e-5


@dataclass
class OracleReport:
    check_name: str
    analytic_value: Any
    oracle_value: Any
    abs_error: float
    rel_error: float
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("analytic_value", "oracle_value"):
            d[key] = _jsonable(d[key])
        return d


def _jsonable(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def compare(name: str, analytic, oracle, tol: float, floor: float = 0.0, **context) -> OracleReport:
    """Relative comparison; ``floor`` sets the scale below which a target
    counts as near-zero and the check degrades to absolute error."""
    err = abs(complex(analytic) - complex(oracle))
    denom = max(abs(complex(analytic)), abs(complex(oracle)), floor)
    rel = err / denom if denom > 0 else err
    return OracleReport(name, analytic, oracle, float(err), float(rel), tol, bool(rel <= tol), context)


def _mom_root(s: float) -> complex:
    if s >= 0:
        return complex(math.sqrt(s), 0.0)
    return complex(0.0, math.sqrt(-s))


def _det_poly(k: Kinematics, pot: StepPotential):
    """Quartic coefficients (highest first) of ``det(M+ M- - |W0|^2)`` in ``s``."""
    E, m, V = k.E, k.m, pot.V0
    w2 = pot.w_abs ** 2
    scale = E * E + V * V + w2 + m * m
    nodes = scale * np.cos(np.pi * (np.arange(5) + 0.5) / 5)
    vals = []
    for s in nodes:
        Q = _mom_root(s)
        mat = dirac.m_plus(E, Q, m, V) @ dirac.m_minus(E, Q, m, V) - w2 * dirac.ID4
        vals.append(np.linalg.det(mat).real)
    x = nodes / scale
    coeffs = np.linalg.solve(np.vander(x, 5), np.array(vals))
    return coeffs / scale ** np.arange(4, -1, -1), scale


def det_roots_Qsq(k: Kinematics, pot: StepPotential) -> tuple[float, float]:
    """Both roots in ``s = Q^2`` of the non-trivial-solution condition, sorted.

    The 4x4 determinant is the square of a monic quadratic (one factor per
    spin).  The quadratic is read off the quartic and checked to square back.
    """
    (c4, c3, c2, c1, c0), scale = _det_poly(k, pot)
    c3, c2, c1, c0 = c3 / c4, c2 / c4, c1 / c4, c0 / c4
    b = c3 / 2.0
    c = (c2 - b * b) / 2.0
    if abs(c1 - 2 * b * c) > SQUARE_RTOL * 1e2 * scale ** 3 or abs(c0 - c * c) > SQUARE_RTOL * 1e2 * scale ** 4:
        raise ConsistencyError("determinant is not a perfect square in Q^2")
    disc = b * b - 4.0 * c
    if disc < -SQUARE_RTOL * scale ** 2:
        raise ConsistencyError("complex Q^2 roots")
    sq = math.sqrt(max(disc, 0.0))
    big = -(b + math.copysign(sq, b)) / 2.0
    small = c / big if big != 0 else 0.0
    return tuple(sorted((small, big)))


def _null_basis(mat: np.ndarray) -> np.ndarray:
    _, sv, vh = np.linalg.svd(mat)
    cut = NULLSPACE_RTOL * max(sv[0], 1e-300)
    small = sv < cut
    if small.sum() != 2:
        raise DegeneracyError(f"null space has dimension {int(small.sum())}, expected 2")
    return vh[small].conj().T


def _normalised(basis: np.ndarray, one: int, zero: int) -> np.ndarray:
    """Combination of the two null vectors with ``v[one] = 1`` and ``v[zero] = 0``."""
    coef = np.linalg.solve(basis[[one, zero], :], np.array([1.0, 0.0]))
    return basis @ coef


@dataclass(frozen=True)
class BranchCoefficients:
    A: complex
    M: complex
    N: complex


def nullspace_coeffs(k: Kinematics, pot: StepPotential, branch: str, spin: str = "up") -> BranchCoefficients:
    """Numerical ``(A, M, N)`` for one branch and spin.

    ``minus``: u spans the null space of ``M+ M- - |W0|^2`` at ``Q-``, and
    ``M+^-1 u = [M chi, N sigma3 chi]``.  ``plus``: w spans the null space
    of ``M- M+ - |W0|^2`` at ``Q+``, and ``M-^-1 w = [N sigma3 chi, M chi]``.
    """
    E, m, V = k.E, k.m, pot.V0
    w2 = pot.w_abs ** 2
    s_minus, s_plus = det_roots_Qsq(k, pot)
    up = spin == "up"
    if branch == "minus":
        Q = _mom_root(s_minus)
        mp, mm = dirac.m_plus(E, Q, m, V), dirac.m_minus(E, Q, m, V)
        basis = _null_basis(mp @ mm - w2 * dirac.ID4)
        u = _normalised(basis, 0, 1) if up else _normalised(basis, 1, 0)
        A = u[2] if up else -u[3]
        x = np.linalg.solve(mp, u)
        M, N = (x[0], x[2]) if up else (x[1], -x[3])
    elif branch == "plus":
        Q = _mom_root(s_plus)
        mp, mm = dirac.m_plus(E, Q, m, V), dirac.m_minus(E, Q, m, V)
        basis = _null_basis(mm @ mp - w2 * dirac.ID4)
        wv = _normalised(basis, 2, 3) if up else _normalised(basis, 3, 2)
        A = wv[0] if up else -wv[1]
        x = np.linalg.solve(mm, wv)
        N, M = (x[0], x[2]) if up else (-x[1], x[3])
    else:
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    return BranchCoefficients(complex(A), complex(M), complex(N))


def oracle_momentum(k: Kinematics, pot: StepPotential, branch: str) -> complex:
    s_minus, s_plus = det_roots_Qsq(k, pot)
    return _mom_root(s_plus if branch == "plus" else s_minus)


def fd_velocity(k: Kinematics, pot: StepPotential, branch: str, h: float = DEFAULT_H) -> float:
    """``1 / (dQ/dE)`` by a second-order central difference of the oracle momenta.

    ``h`` is in units of ``m``.
    """
    idx = 1 if branch == "plus" else 0
    step = h * k.m
    if k.E - step <= k.m:
        raise DomainError("stencil crosses the mass threshold")
    s_lo = det_roots_Qsq(Kinematics(k.E - step, k.m), pot)[idx]
    s_hi = det_roots_Qsq(Kinematics(k.E + step, k.m), pot)[idx]
    if s_lo <= 0 or s_hi <= 0:
        raise DomainError("stencil leaves the oscillating zone")
    dq = (math.sqrt(s_hi) - math.sqrt(s_lo)) / (2.0 * step)
    if dq == 0:
        raise DegeneracyError("dQ/dE vanishes")
    return 1.0 / dq


def fd_convergence_order(k: Kinematics, pot: StepPotential, branch: str, exact: float,
                         h: float = 1e-2) -> float:
    """Observed order from errors at ``h`` and ``h/2`` against ``exact``."""
    e1 = abs(fd_velocity(k, pot, branch, h) - exact)
    e2 = abs(fd_velocity(k, pot, branch, h / 2) - exact)
    if e1 == 0 or e2 == 0:
        raise DegeneracyError("finite-difference error vanished; order undefined")
    return math.log2(e1 / e2)


def richardson_velocity(k: Kinematics, pot: StepPotential, branch: str, h: float = 1e-3) -> float:
    v1 = fd_velocity(k, pot, branch, h)
    v2 = fd_velocity(k, pot, branch, h / 2)
    return (4.0 * v2 - v1) / 3.0


def residual_norm(psi: dirac.QSpinor, Q, k: Kinematics, pot: StepPotential) -> float:
    """``|D psi| / (|psi| m)``: the Dirac residual relative to the spinor size."""
    n = psi.norm()
    if n == 0:
        raise DomainError("zero spinor has no relative residual")
    res = dirac.apply_dirac(psi, Q, k.E, k.m, pot)
    return res.norm() / (n * k.m)
