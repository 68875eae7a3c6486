import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdirac.dirac import (
    ALPHA3, BETA, ID4, QSpinor, apply_dirac, coupled_residual, dirac_matrices, m_minus, m_plus, product_matrix,
)
from qdirac.stepsolve import StepPotential


def test_clifford_relations():
    a, b = dirac_matrices()
    np.testing.assert_array_equal(b @ b, ID4)
    np.testing.assert_array_equal(a @ a, ID4)
    np.testing.assert_array_equal(a @ b + b @ a, np.zeros((4, 4)))
    np.testing.assert_array_equal(a, a.conj().T)
    np.testing.assert_array_equal(b, b.conj().T)


def test_alpha3_sigma3_blocks():
    assert ALPHA3[0, 2] == 1
    assert ALPHA3[1, 3] == -1
    np.testing.assert_array_equal(np.diag(BETA).real, [1, 1, -1, -1])


def test_matrices_are_copies():
    a, _ = dirac_matrices()
    a[0, 0] = 5
    assert ALPHA3[0, 0] == 0


@pytest.mark.parametrize("E", [1.5, 3.0])
def test_m_operators_at_rest(E):
    m = 1.0
    np.testing.assert_array_equal(m_minus(E, 0, m, 0), np.diag([E - m, E - m, E + m, E + m]))
    np.testing.assert_array_equal(m_plus(E, 0, m, 0), np.diag([E + m, E + m, E - m, E - m]))


def test_product_matrix_hand_derived_block():
    # E=2, Q=1, V0=1, m=1: diagonal E^2+Q^2-(V0+-m)^2 = 1, 5; off-diagonal -2Q(E+-m)sigma3 = -6, -2
    expected = np.array([
        [1, 0, -6, 0],
        [0, 1, 0, 6],
        [-2, 0, 5, 0],
        [0, 2, 0, 5],
    ], dtype=complex)
    np.testing.assert_array_equal(m_plus(2, 1, 1, 1) @ m_minus(2, 1, 1, 1), expected)
    np.testing.assert_array_equal(product_matrix(2, 1, 1, 1), expected)


def test_product_matrix_free():
    np.testing.assert_allclose(product_matrix(3.0, 0, 1.0, 0), 8 * ID4)


def test_product_matrix_bad_order():
    with pytest.raises(ValueError):
        product_matrix(2, 1, 1, 1, order="sideways")


reals = st.floats(min_value=-4, max_value=4)


@given(reals, reals, reals, st.floats(min_value=0.1, max_value=3), reals)
def test_product_matrix_matches_literal_product(E, Qr, Qi, m, V0):
    Q = complex(Qr, Qi)
    pm = product_matrix(E, Q, m, V0, "plus_minus")
    mp = product_matrix(E, Q, m, V0, "minus_plus")
    scale = 1 + E * E + abs(Q) ** 2 + m * m + V0 * V0
    assert np.abs(pm - m_plus(E, Q, m, V0) @ m_minus(E, Q, m, V0)).max() < 1e-12 * scale
    assert np.abs(mp - m_minus(E, Q, m, V0) @ m_plus(E, Q, m, V0)).max() < 1e-12 * scale
    np.testing.assert_array_equal(mp, pm.T)


def _random_spinor(rng):
    return QSpinor(rng.normal(size=4) + 1j * rng.normal(size=4), rng.normal(size=4) + 1j * rng.normal(size=4))


def test_apply_dirac_matches_coupled_system(rng):
    for _ in range(200):
        psi = _random_spinor(rng)
        Q = complex(*rng.normal(size=2))
        E, m, V0 = rng.uniform(1, 5), rng.uniform(0.5, 2), rng.uniform(0, 3)
        pot = StepPotential(V0, complex(*rng.normal(size=2)))
        res = apply_dirac(psi, Q, E, m, pot)
        ru, rw = coupled_residual(psi.u, psi.w, Q, E, m, pot)
        np.testing.assert_allclose(res.u, ru, atol=1e-12, rtol=0)
        np.testing.assert_allclose(res.w, rw, atol=1e-12, rtol=0)


def test_apply_dirac_complex_limit(rng):
    """W0 = 0, w = 0: only the ordinary complex Dirac step equation remains."""
    E, m, V0, Q = 2.5, 1.0, 0.7, 0.4 + 0.3j
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    # independent complex-only residual, written out component by component
    expected = np.array([
        (E - V0 - m) * u[0] - Q * u[2],
        (E - V0 - m) * u[1] + Q * u[3],
        (E - V0 + m) * u[2] - Q * u[0],
        (E - V0 + m) * u[3] + Q * u[1],
    ])
    res = apply_dirac(QSpinor(u, np.zeros(4)), Q, E, m, StepPotential(V0, 0))
    np.testing.assert_allclose(res.u, expected, atol=1e-14)
    np.testing.assert_array_equal(res.w, np.zeros(4))


def test_apply_dirac_random_is_not_a_solution(rng):
    psi = _random_spinor(rng)
    res = apply_dirac(psi, 0.8, 2.0, 1.0, StepPotential(0.5, 0.3 + 0.2j))
    assert res.norm() > 1e-3


def test_qspinor_equality_and_phase():
    a = QSpinor([1, 2, 3, 4], [0, 0, 1j, 0])
    b = QSpinor(np.array([1, 2, 3, 4]), np.array([0, 0, 1j, 0]))
    assert a == b
    assert a != QSpinor([1, 2, 3, 4], [0, 0, 0, 0])
    assert QSpinor.from_components(a.components()) == a
    p = a.times_phase(1j)
    np.testing.assert_array_equal(p.w, a.w * 1j)
    with pytest.raises(ValueError):
        a.u[0] = 7
