"""Quaternions in symplectic form.

A quaternion is stored as a pair of complex numbers ``(z1, z2)`` meaning
``q = z1 + j*z2``.  Everything follows from the commutation rule
``j*z = conj(z)*j`` for complex ``z``:

    (z1 + j z2)(y1 + j y2) = (z1 y1 - conj(z2) y2) + j (conj(z1) y2 + z2 y1)

The real 4-tuple view ``a + b i + c j + d k`` is kept only for
cross-checking against the textbook Hamilton product.  With
``z1 = a + b i`` and ``z2 = c - d i`` the two views coincide.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal


@dataclass(frozen=True)
class Quaternion:
    z1: complex = 0j
    z2: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.z1, -self.z2)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return scale(self, other, "right")

    def __rmul__(self, other):
        return scale(self, other, "left")

    def __abs__(self) -> float:
        return norm(self)

    def isclose(self, other: Quaternion, atol: float = 1e-12) -> bool:
        return abs(self.z1 - other.z1) <= atol and abs(self.z2 - other.z2) <= atol

    def __repr__(self):
        return f"Quaternion({self.z1!r} + j*{self.z2!r})"


ONE = Quaternion(1, 0)
I = Quaternion(1j, 0)
J = Quaternion(0, 1)
K = Quaternion(0, -1j)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Quaternion product ``p*q``."""
    return Quaternion(
        p.z1 * q.z1 - p.z2.conjugate() * q.z2,
        p.z1.conjugate() * q.z2 + p.z2 * q.z1,
    )


def i_sandwich(q: Quaternion) -> Quaternion:
    """Return ``i*q*i``, which for ``q = z1 + j z2`` is ``-z1 + j z2``."""
    return Quaternion(-q.z1, q.z2)


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.z1.conjugate(), -q.z2)


def norm(q: Quaternion) -> float:
    return math.sqrt(abs(q.z1) ** 2 + abs(q.z2) ** 2)


def scale(q: Quaternion, c: complex, side: Literal["left", "right"] = "right") -> Quaternion:
    """One-sided complex scaling: ``c*q`` (left) or ``q*c`` (right).

    The two differ on the ``j`` part because ``c*j = j*conj(c)``.
    """
    c = complex(c)
    if side == "right":
        return Quaternion(q.z1 * c, q.z2 * c)
    if side == "left":
        return Quaternion(c * q.z1, c.conjugate() * q.z2)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def to_real4(q: Quaternion) -> tuple[float, float, float, float]:
    """``(a, b, c, d)`` with ``q = a + b i + c j + d k``."""
    return (q.z1.real, q.z1.imag, q.z2.real, -q.z2.imag)


def from_real4(a: float, b: float, c: float, d: float) -> Quaternion:
    return Quaternion(complex(a, b), complex(c, -d))


def hamilton_real4(p, q):
    """Textbook Hamilton product on real 4-tuples (reference implementation)."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )
