"""Closed-form solution of the quaternionic Dirac equation for the step
potential ``i*V0 + k*W0`` (z > 0).

All quantities are evaluated in units of the mass ``m`` and rescaled on
the way out, so results are exactly homogeneous in ``(E, m, V0, |W0|)``.
Supported regime: ``V0 >= 0`` and ``E > m``.  Only :func:`velocity`
accepts ``V0 < 0``.
"""
from __future__ import annotations

import cmath
import enum
import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Literal

from .dirac import QSpinor
from .errors import DegeneracyError, DomainError

Branch = Literal["plus", "minus"]
Spin = Literal["up", "down"]

BOUNDARY_TOL = 1e-9
DEGENERACY_TOL = 1e-9

# test-only fault switches, see inject_fault()
_FAULTS: set[str] = set()


@contextmanager
def inject_fault(name: str):
    """Temporarily corrupt a closed form; used as a negative control."""
    if name not in {"flip_delta"}:
        raise ValueError(f"unknown fault {name!r}")
    _FAULTS.add(name)
    try:
        yield
    finally:
        _FAULTS.discard(name)


@dataclass(frozen=True)
class StepPotential:
    """The step ``i*V0 + k*W0`` with real ``V0`` and complex ``W0``."""

    V0: float
    W0: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "V0", float(self.V0))
        object.__setattr__(self, "W0", complex(self.W0))
        if not (math.isfinite(self.V0) and cmath.isfinite(self.W0)):
            raise DomainError("potential must be finite")

    @classmethod
    def polar(cls, V0: float, w_abs: float, w_arg: float = 0.0) -> StepPotential:
        return cls(V0, cmath.rect(w_abs, w_arg))

    @property
    def w_abs(self) -> float:
        return abs(self.W0)


@dataclass(frozen=True)
class Kinematics:
    E: float
    m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "E", float(self.E))
        object.__setattr__(self, "m", float(self.m))
        if not self.m > 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        if not self.E > self.m:
            raise DomainError(f"need E > m, got E={self.E}, m={self.m}")

    @property
    def p(self) -> float:
        return math.sqrt((self.E - self.m) * (self.E + self.m))


@dataclass(frozen=True)
class Momenta:
    q_minus_sq: float
    q_plus_sq: float
    delta: float
    Q_minus_sq: float
    Q_plus_sq: float
    Q_minus: complex
    Q_plus: complex


class Zone(enum.Enum):
    DIFFUSION = "diffusion"
    EVANESCENT = "evanescent"
    KLEIN = "klein"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ZoneClassification:
    zone: Zone
    lower: float
    upper: float


@dataclass(frozen=True)
class SpinorCoefficients:
    A_minus: complex
    A_plus: complex
    M_minus: complex
    M_plus: complex
    N_minus: complex
    N_plus: complex


def _require_regime(pot: StepPotential):
    if pot.V0 < 0:
        raise DomainError(f"V0 must be >= 0 here, got {pot.V0}")


def _reduced(k: Kinematics, pot: StepPotential):
    m = k.m
    return k.E / m, pot.V0 / m, pot.w_abs / m


def _root(E: float, V: float, w: float, p2: float) -> float:
    """``sqrt(E^2 V^2 + p^2 |W0|^2)``, continued as ``E*V`` when ``W0 -> 0``.

    For ``V >= 0`` this is the ordinary root.  For ``V < 0`` the sign is
    carried along so that the complex limit keeps ``delta = 0``.
    """
    r = math.hypot(E * V, math.sqrt(p2) * w)
    return -r if V < 0 else r


def _delta_reduced(E: float, V: float, w: float, p2: float) -> float:
    r = _root(E, V, w, p2)
    if w == 0.0:
        return 0.0
    if V != 0.0:
        # conjugate form avoids sqrt(x^2 + eps) - x cancellation;
        # r and E*V share a sign, so the sum never cancels
        return p2 * w * w / (r + E * V)
    return r


def _momenta_reduced(E: float, V: float, w: float) -> Momenta:
    p2 = (E - 1.0) * (E + 1.0)
    d = _delta_reduced(E, V, w, p2)
    if "flip_delta" in _FAULTS:
        d = -d
    qm2 = (E - V) ** 2 - 1.0
    qp2 = (E + V) ** 2 - 1.0
    if "flip_delta" in _FAULTS or w == 0.0:
        Qm2 = qm2 + w * w - 2.0 * d
        Qp2 = qp2 + w * w + 2.0 * d
    else:
        # the larger root never cancels; the smaller is the product over it
        big = E * E - 1.0 + V * V + w * w + 2.0 * abs(_root(E, V, w, p2))
        small = _edge_factor(E, V + 1.0, w) * _edge_factor(E, V - 1.0, w) / big
        Qm2, Qp2 = (small, big) if V >= 0 else (big, small)
    return Momenta(qm2, qp2, d, Qm2, Qp2, _branch_root(Qm2), _branch_root(Qp2))


def _edge_factor(E: float, a: float, w: float) -> float:
    """``E^2 - w^2 - a^2`` as a product, exact near the zone edge ``E = hypot(w, a)``."""
    h = math.hypot(w, a)
    return (E - h) * (E + h)


def _branch_root(s: float) -> complex:
    # decaying choice for negative squares: exp(iQz) -> exp(-kappa z)
    if s >= 0:
        return complex(math.sqrt(s), 0.0)
    return complex(0.0, math.sqrt(-s))


def delta(k: Kinematics, pot: StepPotential) -> float:
    """``sqrt(E^2 V0^2 + p^2 |W0|^2) - E V0`` (always >= 0)."""
    _require_regime(pot)
    E, V, w = _reduced(k, pot)
    return _delta_reduced(E, V, w, (E - 1.0) * (E + 1.0)) * k.m ** 2


def momenta(k: Kinematics, pot: StepPotential) -> Momenta:
    """Squared momenta ``q+-^2``, ``Q+-^2 = q+-^2 + |W0|^2 +- 2 delta`` and roots."""
    _require_regime(pot)
    E, V, w = _reduced(k, pot)
    r = _momenta_reduced(E, V, w)
    m = k.m
    m2 = m * m
    return Momenta(
        r.q_minus_sq * m2, r.q_plus_sq * m2, r.delta * m2,
        r.Q_minus_sq * m2, r.Q_plus_sq * m2, r.Q_minus * m, r.Q_plus * m,
    )


def zone_boundaries(pot: StepPotential, m: float = 1.0) -> tuple[float, float]:
    """``(lower, upper)`` energies delimiting the evanescent zone."""
    _require_regime(pot)
    w = pot.w_abs
    upper = math.hypot(w, pot.V0 + m)
    lower = max(m, math.hypot(w, pot.V0 - m))
    return lower, upper


def classify_zone(k: Kinematics, pot: StepPotential, tol: float = BOUNDARY_TOL) -> ZoneClassification:
    """Diffusion above ``upper``, evanescent between, Klein below ``lower``.

    A point within relative ``tol`` of a boundary where ``Q-^2`` vanishes is
    reported as ``Zone.BOUNDARY``.  The clamp ``lower = m`` is the mass
    threshold, not a root of ``Q-^2``, so it never produces BOUNDARY.
    """
    _require_regime(pot)
    m = k.m
    w = pot.w_abs
    upper = math.hypot(w, pot.V0 + m)
    root_lo = math.hypot(w, pot.V0 - m)
    lower = max(m, root_lo)
    E = k.E
    if abs(E - upper) <= tol * upper:
        zone = Zone.BOUNDARY
    elif root_lo > m and abs(E - root_lo) <= tol * root_lo:
        zone = Zone.BOUNDARY
    elif E > upper:
        zone = Zone.DIFFUSION
    elif E > lower:
        zone = Zone.EVANESCENT
    else:
        zone = Zone.KLEIN
    return ZoneClassification(zone, lower, upper)


def tunneling_range(pot: StepPotential, m: float = 1.0) -> float:
    """Width of the evanescent energy window.

    Inside the circle ``|W0|^2 + (V0 - m)^2 <= m^2`` the lower edge is the
    mass threshold; outside it is the second root.
    """
    if not m > 0:
        raise DomainError("mass must be positive")
    lower, upper = zone_boundaries(pot, m)
    return upper - lower


def tunneling_range_circle(V0: float, m: float = 1.0) -> float:
    """Window width on the circle ``|W0| = sqrt(2 V0 m - V0^2)``."""
    if not m > 0:
        raise DomainError("mass must be positive")
    if not 0.0 <= V0 <= 2.0 * m:
        raise DomainError(f"V0 must lie in [0, 2m] on the circle, got {V0}")
    return m * (math.sqrt(1.0 + 4.0 * V0 / m) - 1.0)


def circle_w0(V0: float, m: float = 1.0) -> float:
    if not 0.0 <= V0 <= 2.0 * m:
        raise DomainError(f"V0 must lie in [0, 2m] on the circle, got {V0}")
    return math.sqrt(max(0.0, V0 * (2.0 * m - V0)))


def velocity(k: Kinematics, pot: StepPotential, branch: Branch) -> float:
    """Group velocity ``(dQ/dE)^-1`` of the ``Q+`` or ``Q-`` wave.

    Negative ``V0`` is accepted; the square root is continued with the sign
    of ``V0`` so that the complex limit is analytic in ``V0``.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    E, V, w = _reduced(k, pot)
    p2 = (E - 1.0) * (E + 1.0)
    if V == 0.0:
        # Q and dQ/dE both vanish like (p - |W0|); the ratio is exactly p/E
        p = math.sqrt(p2)
        if branch == "plus" or w < p:
            return p / E
        if w == p:
            raise DegeneracyError("dQ/dE diverges at this point")
        return -p / E
    r = _root(E, V, w, p2)
    mom = _momenta_reduced(E, V, w)
    if branch == "minus":
        if mom.Q_minus_sq < 0:
            raise DomainError("no group velocity for the evanescent Q- wave")
        Q, sign = math.sqrt(mom.Q_minus_sq), -1.0
    else:
        Q, sign = math.sqrt(mom.Q_plus_sq), 1.0
    s2 = V * V + w * w
    if sign * r > 0:
        factor = 1.0 + s2 / abs(r)
    else:
        # 1 - s2/|r| = (r^2 - s2^2) / (|r|(|r| + s2)) with r^2 - s2^2 = s2 (p^2 - s2) + V^2
        factor = (s2 * _edge_factor(math.sqrt(p2), 0.0, math.sqrt(s2)) + V * V) / (abs(r) * (abs(r) + s2))
    if abs(factor) <= DEGENERACY_TOL:
        raise DegeneracyError("dQ/dE diverges at this point")
    return Q / (E * factor)


def _shift_ratio(E: float, V: float, w: float, p2: float) -> float:
    """``delta / (E - m)`` via ``(E + m)|W0|^2 / (root + E V0)``."""
    if w == 0.0:
        return 0.0
    if V == 0.0:
        # root = p|W0| here; cancel it so tiny |W0| cannot underflow to 0/0
        return (E + 1.0) * w / math.sqrt(p2)
    return (E + 1.0) * w * w / (_root(E, V, w, p2) + E * V)


def _check_den(value, scale, what):
    if abs(value) <= DEGENERACY_TOL * scale:
        raise DegeneracyError(f"{what} vanishes at this point")
    return value


@dataclass(frozen=True)
class _Reduced:
    E: float
    V: float
    w: float
    mom: Momenta
    shift: float
    scale: float


def _prepare(k: Kinematics, pot: StepPotential) -> _Reduced:
    _require_regime(pot)
    E, V, w = _reduced(k, pot)
    p2 = (E - 1.0) * (E + 1.0)
    mom = _momenta_reduced(E, V, w)
    return _Reduced(E, V, w, mom, _shift_ratio(E, V, w, p2), E * E + V * V + w * w + 1.0)


def _a_minus(r: _Reduced) -> complex:
    den = _check_den(r.E - r.V + 1.0 - r.shift, math.sqrt(r.scale), "A- denominator")
    return r.mom.Q_minus / den


def _a_plus(r: _Reduced) -> complex:
    den = _check_den(r.E + r.V + 1.0 + r.shift, math.sqrt(r.scale), "A+ denominator")
    return r.mom.Q_plus / den


def _mn_minus(r: _Reduced, A: complex):
    den = _check_den(r.mom.q_plus_sq - r.mom.Q_minus_sq, r.scale, "q+^2 - Q-^2")
    Q = r.mom.Q_minus
    M = (Q * A + r.E - 1.0 + r.V) / den
    N = ((r.E + 1.0 + r.V) * A + Q) / den
    return M, N


def _mn_plus(r: _Reduced, A: complex, A_num: complex | None = None):
    # A_num overrides the A used in N+'s numerator (typo experiment only)
    den = _check_den(r.mom.q_minus_sq - r.mom.Q_plus_sq, r.scale, "q-^2 - Q+^2")
    Q = r.mom.Q_plus
    M = (Q * A + r.E - 1.0 - r.V) / den
    N = ((r.E + 1.0 - r.V) * (A if A_num is None else A_num) + Q) / den
    return M, N


def coefficients(k: Kinematics, pot: StepPotential) -> SpinorCoefficients:
    """The six coefficients fixing the Q- and Q+ spinors.

    ``A`` is dimensionless; ``M`` and ``N`` carry units of 1/energy.
    """
    r = _prepare(k, pot)
    Am = _a_minus(r)
    Ap = _a_plus(r)
    Mm, Nm = _mn_minus(r, Am)
    Mp, Np = _mn_plus(r, Ap)
    m = k.m
    return SpinorCoefficients(Am, Ap, Mm / m, Mp / m, Nm / m, Np / m)


def _chi(spin: Spin):
    if spin == "up":
        return (1.0, 0.0), (1.0, 0.0)
    if spin == "down":
        return (0.0, 1.0), (0.0, -1.0)
    raise ValueError(f"spin must be 'up' or 'down', got {spin!r}")


def psi_minus(z: float, spin: Spin, k: Kinematics, pot: StepPotential) -> QSpinor:
    """``[(1 - j W0 M-) chi, (A- - j W0 N-) sigma3 chi] exp(i Q- z)``."""
    r = _prepare(k, pot)
    chi, s_chi = _chi(spin)
    A = _a_minus(r)
    u = [chi[0], chi[1], A * s_chi[0], A * s_chi[1]]
    if pot.W0 == 0:
        w = [0j] * 4
    else:
        M, N = _mn_minus(r, A)
        W = pot.W0 / k.m
        w = [-W * M * chi[0], -W * M * chi[1], -W * N * s_chi[0], -W * N * s_chi[1]]
    phase = cmath.exp(1j * r.mom.Q_minus * (z * k.m))
    return QSpinor(u, w).times_phase(phase)


def psi_plus(z: float, spin: Spin, k: Kinematics, pot: StepPotential, *,
             _n_plus_uses_a_minus: bool = False) -> QSpinor:
    """``[(-W0* N+ + j A+) sigma3 chi, (-W0* M+ + j) chi] exp(i Q+ z)``."""
    r = _prepare(k, pot)
    chi, s_chi = _chi(spin)
    A = _a_plus(r)
    w = [A * s_chi[0], A * s_chi[1], chi[0], chi[1]]
    if pot.W0 == 0:
        u = [0j] * 4
    else:
        A_num = _a_minus(r) if _n_plus_uses_a_minus else None
        M, N = _mn_plus(r, A, A_num)
        Wc = pot.W0.conjugate() / k.m
        u = [-Wc * N * s_chi[0], -Wc * N * s_chi[1], -Wc * M * chi[0], -Wc * M * chi[1]]
    phase = cmath.exp(1j * r.mom.Q_plus * (z * k.m))
    return QSpinor(u, w).times_phase(phase)


def branch_momentum(k: Kinematics, pot: StepPotential, branch: Branch) -> complex:
    mom = momenta(k, pot)
    return mom.Q_plus if branch == "plus" else mom.Q_minus
