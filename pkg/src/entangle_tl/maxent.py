"""Maximally entangled qudit states, the trace-orthonormal unitary basis,
slide/trace identities and the transfer operator.

The unitary basis is the clock-and-shift family U = X^a Z^b with
X|j> = |j+1 mod d> and Z|j> = exp(2 pi i j / d)|j>, ordered so (a, b) = (0, 0)
comes first.  It is trace-orthogonal, tr(U_n^dag U_m) = d delta_nm, for every
d; any other basis with that property works too and can be passed anywhere a
WeylBasis is accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DEFAULT_TOL, DimensionError, identity
from .report import VerificationReport


def omega(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_i |i i>."""
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    v = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        v[i * d + i] = 1.0
    return v / math.sqrt(d)


def omega_projector(d: int) -> np.ndarray:
    """|Omega><Omega| as a d^2 x d^2 matrix."""
    w = omega(d)
    return np.outer(w, w.conj())


def clock(d: int) -> np.ndarray:
    """Z with Z|j> = exp(2 pi i j / d)|j>."""
    phases = np.exp(2j * np.pi * np.arange(d) / d)
    return np.diag(phases).astype(np.complex128)


def shift(d: int) -> np.ndarray:
    """X with X|j> = |j+1 mod d>."""
    x = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    return x


@dataclass(frozen=True)
class WeylBasis:
    """d^2 unitaries with U_1 = 1 and tr(U_n^dag U_m) = d delta_nm."""

    d: int
    unitaries: tuple

    def __post_init__(self):
        mats = tuple(linalg.as_matrix(u) for u in self.unitaries)
        d = self.d
        if len(mats) != d * d:
            raise ValueError(f"need {d * d} unitaries, got {len(mats)}")
        for n, u in enumerate(mats, start=1):
            if u.shape != (d, d):
                raise DimensionError(f"U_{n} must be {d}x{d}")
            if not linalg.is_unitary(u, 1e-9):
                raise ValueError(f"U_{n} is not unitary")
        if linalg.max_residual(mats[0], identity(d)) > 1e-12:
            raise ValueError("U_1 must be the identity")
        gram = np.array([[np.trace(u.conj().T @ v) for v in mats] for u in mats])
        if linalg.max_residual(gram, d * np.eye(d * d)) > 1e-9:
            raise ValueError("basis is not trace-orthogonal")
        object.__setattr__(self, "unitaries", mats)

    def unitary(self, n: int) -> np.ndarray:
        if not 1 <= n <= self.d ** 2:
            raise ValueError(f"index {n} out of range 1..{self.d ** 2}")
        return self.unitaries[n - 1]


def weyl_basis(d: int) -> WeylBasis:
    """Clock-and-shift basis {X^a Z^b : 0 <= a, b < d}, (0,0) first."""
    x, z = shift(d), clock(d)
    mats = []
    xa = identity(d)
    for a in range(d):
        zb = identity(d)
        for b in range(d):
            mats.append(xa @ zb)
            zb = zb @ z
        xa = xa @ x
    return WeylBasis(d, tuple(mats))


def pauli_weyl_basis() -> WeylBasis:
    """The d=2 set {1, s1, i s2, s3} used throughout the qubit discussion."""
    from .qubit import pauli

    return WeylBasis(2, (pauli(0), pauli(1), 1j * pauli(2), pauli(3)))


@dataclass(frozen=True)
class MaxEntangled:
    d: int
    index: int
    ket: np.ndarray


def omega_n(d: int, n: int, basis: WeylBasis | None = None) -> MaxEntangled:
    """|Omega_n> = (U_n x 1)|Omega>."""
    basis = basis if basis is not None else weyl_basis(d)
    if basis.d != d:
        raise DimensionError("basis dimension mismatch")
    u = basis.unitary(n)
    ket = linalg.kron(u, identity(d)) @ omega(d)
    return MaxEntangled(d, n, ket)


@dataclass(frozen=True)
class TransferOperator:
    """Identity-shaped relabeling of Charlie's system to Bob's."""

    d: int
    matrix: np.ndarray


def transfer_operator(d: int) -> TransferOperator:
    return TransferOperator(d, identity(d))


def phi_of(u, d: int) -> np.ndarray:
    """(U x 1)|Omega>."""
    return linalg.kron(linalg.as_matrix(u), identity(d)) @ omega(d)


def slide_identity_check(m, d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """(M x 1)|Omega> = (1 x M^T)|Omega>."""
    m = linalg.as_matrix(m)
    if m.shape != (d, d):
        raise DimensionError(f"operator must be {d}x{d}")
    report = VerificationReport("slide-identity")
    left = linalg.kron(m, identity(d)) @ omega(d)
    right = linalg.kron(identity(d), m.T) @ omega(d)
    report.add("(M x 1)|Omega> = (1 x M^T)|Omega>", linalg.max_residual(left, right), tol)
    return report


def trace_identities_check(m, mp, n1, n2, d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """tr(M^dag M') = d <psi|psi'> and <psi|N1 x N2|psi'> = (1/d) tr(M^dag N1 M' N2^T)."""
    m, mp = linalg.as_matrix(m), linalg.as_matrix(mp)
    n1, n2 = linalg.as_matrix(n1), linalg.as_matrix(n2)
    for name, a in (("M", m), ("M'", mp), ("N1", n1), ("N2", n2)):
        if a.shape != (d, d):
            raise DimensionError(f"{name} must be {d}x{d}")
    report = VerificationReport("trace-identities")
    psi = phi_of(m, d)
    psi_p = phi_of(mp, d)
    lhs = np.trace(m.conj().T @ mp)
    report.add("tr(M^dag M') = d <psi|psi'>", abs(lhs - d * linalg.inner(psi, psi_p)), tol)
    sandwiched = linalg.inner(psi, linalg.kron(n1, n2) @ psi_p)
    rhs = np.trace(m.conj().T @ n1 @ mp @ n2.T) / d
    report.add("<psi|N1 x N2|psi'> = tr(M^dag N1 M' N2^T)/d", abs(sandwiched - rhs), tol)
    return report


def partial_inner_ca_ab(bra_ca, ket_ab, d: int) -> np.ndarray:
    """Contract <chi|_CA with |xi>_AB over the shared system A.

    Returns the resulting Charlie-to-Bob map as a d x d matrix R with
    R[b, c] = sum_a conj(chi[c, a]) xi[a, b].
    """
    chi = linalg.as_vector(bra_ca).reshape(d, d)
    xi = linalg.as_vector(ket_ab).reshape(d, d)
    return np.einsum("ca,ab->bc", chi.conj(), xi)


def transfer_composition(u, v, d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """<Phi(U)|_CA |Phi(V^T)>_AB = (1/d) (V U^dag) composed with the transfer map."""
    u, v = linalg.as_matrix(u), linalg.as_matrix(v)
    if u.shape != (d, d) or v.shape != (d, d):
        raise DimensionError(f"operators must be {d}x{d}")
    if not (linalg.is_unitary(u, tol=1e-9) and linalg.is_unitary(v, tol=1e-9)):
        raise ValueError("transfer composition expects unitary operators")
    report = VerificationReport("transfer-composition")
    got = partial_inner_ca_ab(phi_of(u, d), phi_of(v.T, d), d)
    expected = (v @ u.conj().T) @ transfer_operator(d).matrix / d
    report.add("<Phi(U)|Phi(V^T)> = (V U^dag) T / d", linalg.max_residual(got, expected), tol)
    if linalg.approx_eq(u, v, 1e-14):
        report.add("U=V special case = T/d", linalg.max_residual(got, identity(d) / d), tol)
    return report


def completeness_check(d: int, basis: WeylBasis | None = None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """<Omega_n|Omega_m> = delta_nm and sum_n |Omega_n><Omega_n| = identity.

    The completeness sum lives on the d^2-dimensional bipartite space (the
    only dimensionally consistent reading of the orthogonality relation).
    """
    basis = basis if basis is not None else weyl_basis(d)
    report = VerificationReport("maxent-completeness")
    kets = [omega_n(d, n, basis).ket for n in range(1, d * d + 1)]
    gram = np.array([[linalg.inner(a, b) for b in kets] for a in kets])
    report.add("<Omega_n|Omega_m> = delta_nm", linalg.max_residual(gram, np.eye(d * d)), tol)
    total = sum(np.outer(k, k.conj()) for k in kets)
    report.add("sum_n omega_n = 1", linalg.max_residual(total, identity(d * d)), tol)
    return report
