"""Dirac-representation matrices and the reduced quaternionic Dirac operator.

Only motion along z is modelled, so of the alpha matrices only ``alpha3``
is provided.  Complex 4-spinors are plain ``numpy`` arrays of shape (4,);
4x4 complex matrices are ``numpy`` arrays of shape (4, 4).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .qalg import Quaternion, i_sandwich, mul

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)
_ZERO2 = np.zeros((2, 2), dtype=complex)
_ID2 = np.eye(2, dtype=complex)

ALPHA3 = np.block([[_ZERO2, SIGMA3], [SIGMA3, _ZERO2]])
BETA = np.block([[_ID2, _ZERO2], [_ZERO2, -_ID2]])
ID4 = np.eye(4, dtype=complex)

for _m in (ALPHA3, BETA):
    _m.setflags(write=False)


def dirac_matrices():
    """Return ``(alpha3, beta)`` in the Dirac representation (copies)."""
    return ALPHA3.copy(), BETA.copy()


@dataclass(frozen=True, eq=False)
class QSpinor:
    """Quaternionic 4-spinor ``psi = u + j*w`` with complex 4-spinors u, w."""

    u: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex).reshape(4)
        w = np.asarray(self.w, dtype=complex).reshape(4)
        u.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    def __eq__(self, other):
        if not isinstance(other, QSpinor):
            return NotImplemented
        return bool(np.array_equal(self.u, other.u) and np.array_equal(self.w, other.w))

    __hash__ = None

    def components(self) -> list[Quaternion]:
        return [Quaternion(a, b) for a, b in zip(self.u, self.w)]

    @classmethod
    def from_components(cls, comps) -> QSpinor:
        comps = list(comps)
        return cls([q.z1 for q in comps], [q.z2 for q in comps])

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.u, self.u).real + np.vdot(self.w, self.w).real))

    def times_phase(self, phase: complex) -> QSpinor:
        """Right-multiply every component by the complex number ``phase``."""
        return QSpinor(self.u * phase, self.w * phase)


def m_minus(E, Q, m, V0):
    """``E - alpha3*Q - beta*m - V0``."""
    return (E - V0) * ID4 - complex(Q) * ALPHA3 - m * BETA


def m_plus(E, Q, m, V0):
    """``E - alpha3*Q + beta*m + V0``."""
    return (E + V0) * ID4 - complex(Q) * ALPHA3 + m * BETA


def product_matrix(E, Q, m, V0, order: Literal["plus_minus", "minus_plus"] = "plus_minus"):
    """Closed-form block matrix of ``M+ M-`` (or ``M- M+``, its transpose).

    Diagonal blocks ``E^2 + Q^2 - (V0 +/- m)^2``, off-diagonal blocks
    ``-2 Q (E +/- m) sigma3``.
    """
    Q = complex(Q)
    upper = E * E + Q * Q - (V0 + m) ** 2
    lower = E * E + Q * Q - (V0 - m) ** 2
    out = np.block([
        [upper * _ID2, -2 * Q * (E + m) * SIGMA3],
        [-2 * Q * (E - m) * SIGMA3, lower * _ID2],
    ])
    if order == "plus_minus":
        return out
    if order == "minus_plus":
        return out.T.copy()
    raise ValueError(f"unknown order {order!r}")


def apply_dirac(psi: QSpinor, Q, E, m, pot) -> QSpinor:
    """Left-hand side of ``(E - alpha3 Q) psi + (beta m + V0 - j W0) i psi i``.

    Complex scalars (``E``, ``Q``) act from the right, which is how the
    plane-wave factor ``exp(iQz)`` enters the equation; this keeps the
    evanescent case (complex ``Q``) on the same footing.  Any object with
    ``V0`` and ``W0`` attributes is accepted as ``pot``.
    """
    Q = complex(Q)
    jW0 = Quaternion(0, complex(pot.W0))
    comps = psi.components()
    sandwiched = [i_sandwich(q) for q in comps]
    out = []
    for r in range(4):
        acc = comps[r] * complex(E)
        for c in range(4):
            a = ALPHA3[r, c].real
            if a:
                acc = acc - (comps[c] * Q) * a
        coupling = BETA[r, r].real * m + pot.V0
        acc = acc + sandwiched[r] * coupling - mul(jW0, sandwiched[r])
        out.append(acc)
    return QSpinor.from_components(out)


def coupled_residual(u, w, Q, E, m, pot):
    """The same equation split into ``(M- u + W0* w, M+ w + W0 u)``."""
    W0 = complex(pot.W0)
    ru = m_minus(E, Q, m, pot.V0) @ u + W0.conjugate() * np.asarray(w)
    rw = m_plus(E, Q, m, pot.V0) @ w + W0 * np.asarray(u)
    return ru, rw
