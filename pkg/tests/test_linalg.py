import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entangle_tl import linalg
from entangle_tl.linalg import (DimensionError, approx_eq, dagger, identity, is_unitary,
                                kron, max_residual, trace)
from entangle_tl.qubit import bell_matrix, pauli

from conftest import random_complex_matrix


def test_kron_identities():
    assert approx_eq(kron(identity(2), identity(2)), identity(4), 0)


def test_kron_squares_to_bell_matrix_square():
    b = bell_matrix()
    assert max_residual(1j * kron(pauli(1), pauli(2)), b @ b) < 1e-12


def test_kron_sigma3_sigma3_hand_expansion():
    # 4x4 expansion done by hand: diag(1, -1, -1, 1)
    expected = np.diag([1, -1, -1, 1]).astype(complex)
    assert max_residual(kron(pauli(3), pauli(3)), expected) == 0


def test_trace_of_identity_is_dimension():
    assert trace(identity(3)) == 3


def test_dagger_b_times_b_is_identity():
    # explicit 4x4 multiply oracle, no library matmul
    b = bell_matrix()
    prod = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            prod[i, j] = sum(np.conj(b[k, i]) * b[k, j] for k in range(4))
    assert max_residual(prod, identity(4)) < 1e-12
    assert max_residual(dagger(b) @ b, identity(4)) < 1e-12


def test_transpose_of_bell_matrix_is_its_inverse():
    b = bell_matrix()
    assert max_residual(b @ linalg.transpose(b), identity(4)) < 1e-12


def test_approx_eq_and_max_residual():
    assert approx_eq(identity(2), identity(2), 1e-12)
    b = bell_matrix()
    b2 = b @ b
    assert approx_eq(b2 @ b2, -identity(4), 1e-12)
    assert max_residual(np.linalg.matrix_power(b, 8), identity(4)) <= 1e-12
    assert not approx_eq(identity(2), 2 * identity(2), 1e-12)


def test_is_unitary():
    assert is_unitary(pauli(1))
    assert is_unitary(bell_matrix())
    assert not is_unitary(np.diag([1.0, 2.0]))


def test_shape_mismatch_raises():
    with pytest.raises(DimensionError):
        linalg.mul(identity(2), identity(3))
    with pytest.raises(DimensionError):
        linalg.add(identity(2), identity(3))
    with pytest.raises(DimensionError):
        max_residual(identity(2), identity(3))
    with pytest.raises(DimensionError):
        linalg.apply(identity(2), np.ones(3))
    with pytest.raises(DimensionError):
        trace(np.ones((2, 3)))


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        linalg.as_matrix(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(ValueError):
        linalg.as_vector(np.array([np.inf, 0]))


def test_dagger_involution(rng):
    m = random_complex_matrix(rng, 5)
    assert np.array_equal(dagger(dagger(m)), m)


def test_scale_and_apply():
    assert max_residual(linalg.scale(2j, identity(2)), 2j * identity(2)) == 0
    v = linalg.apply(pauli(1), linalg.basis_ket(2, 0))
    assert max_residual(v, linalg.basis_ket(2, 1)) == 0
    assert linalg.inner(linalg.basis_ket(2, 0), v) == 0


def test_conj_and_outer():
    m = pauli(2)
    assert max_residual(linalg.conj(m), -m) == 0  # sigma2 is purely imaginary
    p = linalg.outer(linalg.basis_ket(2, 0), linalg.basis_ket(2, 1))
    assert p[0, 1] == 1 and np.count_nonzero(p) == 1


@pytest.mark.parametrize("da,db", [(2, 2), (3, 2), (4, 3), (8, 8)])
def test_trace_of_kron_factorizes(rng, da, db):
    a = random_complex_matrix(rng, da)
    b = random_complex_matrix(rng, db)
    assert abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-10 * max(1, abs(trace(a) * trace(b)))


def test_transpose_of_kron(rng):
    a = random_complex_matrix(rng, 3)
    b = random_complex_matrix(rng, 4)
    assert max_residual(linalg.transpose(kron(a, b)),
                        kron(linalg.transpose(a), linalg.transpose(b))) < 1e-12


def test_kron_associative(rng):
    a, b, c = (random_complex_matrix(rng, k) for k in (2, 3, 2))
    assert max_residual(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-10


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@settings(deadline=None, max_examples=30)
@given(entries=st.lists(finite, min_size=8, max_size=8), scale=finite)
def test_kron_bilinear(entries, scale):
    a = np.array(entries[:4], dtype=complex).reshape(2, 2)
    b = np.array(entries[4:], dtype=complex).reshape(2, 2)
    c = identity(2)
    lhs = kron(a + scale * b, c)
    rhs = kron(a, c) + scale * kron(b, c)
    assert max_residual(lhs, rhs) < 1e-9
