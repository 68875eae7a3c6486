import cmath

import pytest
from hypothesis import given, strategies as st

from qdirac.qalg import (
    I, J, K, ONE, Quaternion, conj, from_real4, hamilton_real4, i_sandwich, mul, norm, scale, to_real4,
)

from .conftest import complexes

quaternions = st.builds(Quaternion, complexes, complexes)


def test_basis_table():
    assert mul(I, J) == K
    assert mul(J, K) == I
    assert mul(K, I) == J
    for u in (I, J, K):
        assert mul(u, u) == -ONE


def test_identity():
    q = Quaternion(0.3 - 1.2j, 2.5 + 0.1j)
    assert mul(q, ONE) == q
    assert mul(ONE, q) == q


def test_j_commutes_to_conjugate():
    z = 0.3 + 0.7j
    assert mul(J, Quaternion(z)) == mul(Quaternion(z.conjugate()), J)


@pytest.mark.parametrize("q, expected", [
    (ONE, -ONE),
    (J, J),
])
def test_i_sandwich_trivial(q, expected):
    assert i_sandwich(q) == expected


def test_i_sandwich_against_real_hamilton_product():
    q = Quaternion(2, 1 + 1j)
    i4 = to_real4(I)
    brute = from_real4(*hamilton_real4(i4, hamilton_real4(to_real4(q), i4)))
    assert brute.isclose(Quaternion(-2, 1 + 1j), atol=0)
    assert i_sandwich(q) == Quaternion(-2, 1 + 1j)


def test_conj_norm_scale():
    assert conj(J) == -J
    assert norm(ONE + J) == pytest.approx(2 ** 0.5, abs=1e-15)
    assert scale(J, 1j, "right") == -K
    assert scale(J, 1j, "left") == K
    with pytest.raises(ValueError):
        scale(J, 1j, "middle")


def test_real4_roundtrip():
    assert to_real4(K) == (0.0, 0.0, 0.0, 1.0)
    assert from_real4(1, 2, 3, 4) == Quaternion(1 + 2j, 3 - 4j)


@given(quaternions, quaternions)
def test_norm_multiplicative(p, q):
    lhs = norm(mul(p, q))
    rhs = norm(p) * norm(q)
    assert abs(lhs - rhs) <= 1e-12 * max(rhs, 1e-300)


@given(quaternions, quaternions)
def test_symplectic_matches_hamilton(p, q):
    ref = from_real4(*hamilton_real4(to_real4(p), to_real4(q)))
    scale_ = max(norm(p) * norm(q), 1.0)
    assert mul(p, q).isclose(ref, atol=1e-14 * scale_)


@given(quaternions, quaternions, quaternions)
def test_associative(p, q, r):
    lhs = mul(mul(p, q), r)
    rhs = mul(p, mul(q, r))
    assert lhs.isclose(rhs, atol=1e-12 * max(norm(p) * norm(q) * norm(r), 1.0))


@given(quaternions)
def test_i_sandwich_is_double_product(q):
    assert i_sandwich(q) == mul(I, mul(q, I))


@given(complexes)
def test_j_commutation_rule(z):
    diff = mul(J, Quaternion(z)) - mul(Quaternion(z.conjugate()), J)
    assert diff == Quaternion(0, 0)


@given(quaternions, complexes)
def test_scaling_sides(q, c):
    assert scale(q, c, "right") == mul(q, Quaternion(c))
    assert scale(q, c, "left") == mul(Quaternion(c), q)
    assert q * c == scale(q, c, "right")
    assert c * q == scale(q, c, "left")


def test_conj_reverses_products():
    p = Quaternion(cmath.rect(1.3, 0.4), 0.2 - 0.9j)
    q = Quaternion(-0.5 + 2j, 1.1 + 0.3j)
    assert conj(mul(p, q)).isclose(mul(conj(q), conj(p)))
