import math

import numpy as np
import pytest

from entangle_tl import linalg, qubit
from entangle_tl.linalg import identity, kron, max_residual
from entangle_tl.qubit import BellKind, bell_matrix, bell_state, pauli, permutation_qubit


def test_pauli_values():
    assert max_residual(pauli(0), identity(2)) == 0
    assert max_residual(pauli(1) @ pauli(1), identity(2)) == 0
    with pytest.raises(ValueError):
        pauli(4)


def test_pauli_commutator_by_hand():
    # sigma1 sigma2 = i sigma3 and sigma2 sigma1 = -i sigma3, multiplied out
    # entry by entry: commutator = diag(2i, -2i)
    comm = pauli(1) @ pauli(2) - pauli(2) @ pauli(1)
    assert max_residual(comm, np.diag([2j, -2j])) < 1e-15
    assert max_residual(comm, 2j * pauli(3)) < 1e-15


def test_bell_state_values():
    s2 = math.sqrt(2)
    assert max_residual(bell_state(BellKind.PHI_PLUS).reshape(4, 1),
                        np.array([[1], [0], [0], [1]]) / s2) < 1e-15
    assert max_residual(bell_state(BellKind.PSI_MINUS).reshape(4, 1),
                        np.array([[0], [1], [-1], [0]]) / s2) < 1e-15
    assert abs(linalg.inner(bell_state(BellKind.PHI_PLUS), bell_state(BellKind.PSI_MINUS))) == 0


def test_bell_states_orthonormal_basis():
    kets = [bell_state(k) for k in BellKind]
    gram = np.array([[linalg.inner(a, b) for b in kets] for a in kets])
    assert max_residual(gram, identity(4)) < 1e-15


def test_bell_projector_completeness():
    total = sum(np.outer(bell_state(k), bell_state(k).conj()) for k in BellKind)
    assert max_residual(total, identity(4)) < 1e-15


def test_bell_matrix_entries():
    b = bell_matrix()
    assert abs(b[0, 0] - 1 / math.sqrt(2)) < 1e-15
    assert abs(b[3, 0] + 1 / math.sqrt(2)) < 1e-15
    assert max_residual(b @ b.T, identity(4)) < 1e-15


def test_local_unitary_relations_pass():
    report = qubit.check_local_unitary_relations(1e-12)
    assert report.overall_pass
    assert len(report.checks) == 6


def test_bell_matrix_identities_pass():
    report = qubit.check_bell_matrix_identities(1e-12)
    assert report.overall_pass
    names = [c.identity_name for c in report.checks]
    assert any("B^4" in n for n in names)
    assert any("B^8" in n for n in names)


def test_permutation_checks_pass():
    report = qubit.check_permutation_expansion(1e-12)
    assert report.overall_pass


def test_permutation_swaps_and_squares():
    p = permutation_qubit()
    assert max_residual(p @ p, identity(4)) == 0
    v01 = linalg.product_ket(2, 0, 1)
    v10 = linalg.product_ket(2, 1, 0)
    assert max_residual(p @ v01, v10) == 0


def test_pauli_convention_is_the_unique_simultaneous_one():
    # (1 x -i s2)|phi+> must equal (i s2 x 1)|phi+> equal |psi->
    phi = bell_state(BellKind.PHI_PLUS)
    left = kron(identity(2), -1j * pauli(2)) @ phi
    right = kron(1j * pauli(2), identity(2)) @ phi
    assert max_residual(left, bell_state(BellKind.PSI_MINUS)) < 1e-15
    assert max_residual(right, bell_state(BellKind.PSI_MINUS)) < 1e-15
