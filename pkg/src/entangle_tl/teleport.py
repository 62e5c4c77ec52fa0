"""Teleportation and dense-coding equations.

Covers the standard qubit expansion in the Bell basis, its rewrites through
the entangling matrix B and through the swap/virtual-crossing form, the
measurement formulation at general dimension, the qudit resolution summing
those measurement branches, a Monte Carlo protocol simulation, and the
characteristic trace equations of the tight schemes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DEFAULT_TOL, DimensionError, identity, kron
from .maxent import WeylBasis, omega, omega_n, omega_projector, weyl_basis
from .qubit import BellKind, bell_matrix, bell_matrix_inverse, bell_state, pauli, permutation_qubit, sigma_vec_11
from .report import VerificationReport


def _require_unit(v, what="state"):
    v = linalg.as_vector(v)
    if abs(linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError(f"{what} must be normalized")
    return v


def _bell_corrections() -> list[tuple[BellKind, np.ndarray]]:
    # Branch corrections of the qubit teleportation equation, in Bell order.
    return [
        (BellKind.PHI_PLUS, identity(2)),
        (BellKind.PHI_MINUS, pauli(3)),
        (BellKind.PSI_PLUS, pauli(1)),
        (BellKind.PSI_MINUS, -1j * pauli(2)),
    ]


def teleport_equation_qubit_check(a: complex, b: complex, tol: float = DEFAULT_TOL) -> VerificationReport:
    """|psi>_C |phi+>_AB = (1/2) sum over Bell branches with corrections
    (1, s3, s1, -i s2)."""
    psi = _require_unit(np.array([a, b], dtype=np.complex128), "(a, b)")
    report = VerificationReport("teleport-equation-qubit")
    lhs = linalg.kron_vec(psi, bell_state(BellKind.PHI_PLUS))
    rhs = np.zeros(8, dtype=np.complex128)
    for kind, corr in _bell_corrections():
        rhs += linalg.kron_vec(bell_state(kind), corr @ psi) / 2
        # project the CA pair onto this Bell state and compare Bob's factor
        got = (kron(bell_state(kind).conj().reshape(1, 4), identity(2)) @ lhs).ravel()
        report.add(f"branch {kind.value}: coefficient 1/2 with correction", linalg.max_residual(got, corr @ psi / 2), tol)
    report.add("full Bell-basis expansion", linalg.max_residual(lhs, rhs), tol)
    return report


def _vec_sigma_expansion(prefix: np.ndarray, psi: np.ndarray, coeff: complex = 0.5) -> np.ndarray:
    """coeff * sum_k |v_k> x (prefix sigma_k psi) over the product kets
    v = (|00>, |01>, |10>, |11>) and the correction vector (s3, s1, i s2, 1)."""
    kets = [linalg.product_ket(2, i, j) for (i, j) in ((0, 0), (0, 1), (1, 0), (1, 1))]
    out = np.zeros(8, dtype=np.complex128)
    for ket, op in zip(kets, sigma_vec_11()):
        out += coeff * linalg.kron_vec(ket, (prefix @ op) @ psi)
    return out


def bell_matrix_form_check(tol: float = DEFAULT_TOL, samples: int = 8, seed: int = 0) -> VerificationReport:
    """The B-form of the teleportation equation and its three resource-state
    variants, including the (B^-1 x 1)(1 x B) configuration forms."""
    report = VerificationReport("teleport-bell-matrix-form")
    b = bell_matrix()
    binv = bell_matrix_inverse()
    one2 = identity(2)
    rng = np.random.default_rng(seed)
    psis = [linalg.basis_ket(2, 0), linalg.basis_ket(2, 1)]
    for _ in range(samples):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        psis.append(v / np.linalg.norm(v))

    worst = {name: 0.0 for name in (
        "phi+ resource: (1xB)(psi x |11>) = (Bx1)(v x sigma/2 psi)",
        "phi+ resource: configuration form",
        "phi- resource: (1xB)(psi x |00>) = psi x phi-",
        "phi- resource: (Bx1) form with s3 corrections",
        "psi+ resource: configuration form with s1 corrections",
        "psi- resource: configuration form with -i s2 corrections",
    )}
    for psi in psis:
        lhs = kron(one2, b) @ linalg.kron_vec(psi, linalg.product_ket(2, 1, 1))
        rhs = kron(b, one2) @ _vec_sigma_expansion(one2, psi)
        worst["phi+ resource: (1xB)(psi x |11>) = (Bx1)(v x sigma/2 psi)"] = max(
            worst["phi+ resource: (1xB)(psi x |11>) = (Bx1)(v x sigma/2 psi)"], linalg.max_residual(lhs, rhs))

        cfg = kron(binv, one2) @ kron(one2, b) @ linalg.kron_vec(psi, linalg.product_ket(2, 1, 1))
        worst["phi+ resource: configuration form"] = max(
            worst["phi+ resource: configuration form"], linalg.max_residual(cfg, _vec_sigma_expansion(one2, psi)))

        lhs_m = kron(one2, b) @ linalg.kron_vec(psi, linalg.product_ket(2, 0, 0))
        worst["phi- resource: (1xB)(psi x |00>) = psi x phi-"] = max(
            worst["phi- resource: (1xB)(psi x |00>) = psi x phi-"],
            linalg.max_residual(lhs_m, linalg.kron_vec(psi, bell_state(BellKind.PHI_MINUS))))

        rhs_m = kron(b, one2) @ _vec_sigma_expansion(pauli(3), psi)
        worst["phi- resource: (Bx1) form with s3 corrections"] = max(
            worst["phi- resource: (Bx1) form with s3 corrections"], linalg.max_residual(lhs_m, rhs_m))

        cfg_p = kron(binv, one2) @ kron(one2, b) @ linalg.kron_vec(psi, linalg.product_ket(2, 0, 1))
        worst["psi+ resource: configuration form with s1 corrections"] = max(
            worst["psi+ resource: configuration form with s1 corrections"],
            linalg.max_residual(cfg_p, _vec_sigma_expansion(pauli(1), psi)))

        cfg_m = kron(binv, one2) @ kron(one2, b) @ linalg.kron_vec(psi, -linalg.product_ket(2, 1, 0))
        worst["psi- resource: configuration form with -i s2 corrections"] = max(
            worst["psi- resource: configuration form with -i s2 corrections"],
            linalg.max_residual(cfg_m, _vec_sigma_expansion(-1j * pauli(2), psi)))
    for name, residual in worst.items():
        report.add(name, residual, tol)
    return report


def virtual_form_check(tol: float = DEFAULT_TOL, samples: int = 8, seed: int = 0) -> VerificationReport:
    """The swap/virtual-crossing form of the teleportation equation and its
    variants, plus the teleportation-swapping equivalence."""
    from .braid import teleport_swap

    report = VerificationReport("teleport-virtual-form")
    b = bell_matrix()
    p = permutation_qubit()
    one2 = identity(2)
    one8 = identity(8)
    swap_op = teleport_swap(2)  # (P x 1)(1 x P)
    rng = np.random.default_rng(seed)
    psis = [linalg.basis_ket(2, 0), linalg.basis_ket(2, 1)]
    for _ in range(samples):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        psis.append(v / np.linalg.norm(v))

    subtractions = {
        BellKind.PHI_PLUS: kron(one2, kron(pauli(2), pauli(2))),
        BellKind.PHI_MINUS: kron(one2, kron(pauli(1), pauli(1))),
        BellKind.PSI_PLUS: kron(one2, kron(pauli(3), pauli(3))),
        BellKind.PSI_MINUS: one8,
    }
    worst: dict[str, float] = {}

    def bump(name, value):
        worst[name] = max(worst.get(name, 0.0), value)

    for psi in psis:
        for kind, sub in subtractions.items():
            lhs = linalg.kron_vec(psi, bell_state(kind))
            op = kron(one2, p) - sub
            rhs = op @ linalg.kron_vec(bell_state(kind), psi)
            bump(f"{kind.value} resource: (1xP - subtraction) form", linalg.max_residual(lhs, rhs))
            swapped = swap_op @ linalg.kron_vec(bell_state(kind), psi)
            bump(f"{kind.value} resource: teleport-swap equivalence", linalg.max_residual(rhs, swapped))

        base = linalg.kron_vec(linalg.product_ket(2, 1, 1), psi)
        lhs_mix = kron(one2, b) @ swap_op @ base
        rhs_mix = swap_op @ kron(b, one2) @ base
        bump("virtual mixed relation on |11> x psi", linalg.max_residual(lhs_mix, rhs_mix))
        bump("left side via (1xB)(Px1)(1xP)", linalg.max_residual(
            lhs_mix, linalg.kron_vec(psi, bell_state(BellKind.PHI_PLUS))))
        rhs_op = (kron(one2, p) - kron(one2, kron(pauli(2), pauli(2)))) @ kron(b, one2)
        bump("right side via (1xP - s2s2)(Bx1)", linalg.max_residual(
            rhs_op @ base, linalg.kron_vec(psi, bell_state(BellKind.PHI_PLUS))))

    for name, residual in worst.items():
        report.add(name, residual, tol)
    return report


@dataclass(frozen=True)
class TeleportOutcome:
    outcome_index: int
    correction: np.ndarray
    bob_state: np.ndarray
    amplitude_weight: float


def measurement_form(d: int, n: int, psi, basis: WeylBasis | None = None, tol: float = DEFAULT_TOL) -> TeleportOutcome:
    """Apply the Bell-type measurement projector for outcome n and verify the
    branch equals (1/d)|Omega_n> x U_n^dag|psi>."""
    basis = basis if basis is not None else weyl_basis(d)
    psi = _require_unit(psi)
    if psi.shape != (d,):
        raise DimensionError(f"psi must have dimension {d}")
    ket_n = omega_n(d, n, basis).ket
    state = linalg.kron_vec(psi, omega(d))
    projector = kron(np.outer(ket_n, ket_n.conj()), identity(d))
    measured = projector @ state
    u = basis.unitary(n)
    expected = linalg.kron_vec(ket_n, u.conj().T @ psi) / d
    residual = linalg.max_residual(measured, expected)
    if residual > tol:
        raise ValueError(f"measurement identity violated: residual {residual:.3e}")
    bob_branch = np.einsum("ca,cab->b", ket_n.conj().reshape(d, d), state.reshape(d, d, d))
    weight = float(np.linalg.norm(bob_branch) ** 2)
    return TeleportOutcome(
        outcome_index=n,
        correction=u,
        bob_state=bob_branch * d,
        amplitude_weight=weight,
    )


def qudit_resolution_check(d: int, psi, basis: WeylBasis | None = None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """|psi> x |Omega> = (1/d) sum_n |Omega_n> x U_n^dag |psi>."""
    basis = basis if basis is not None else weyl_basis(d)
    psi = _require_unit(psi)
    report = VerificationReport("qudit-resolution")
    lhs = linalg.kron_vec(psi, omega(d))
    rhs = np.zeros(d ** 3, dtype=np.complex128)
    for n in range(1, d * d + 1):
        u = basis.unitary(n)
        rhs += linalg.kron_vec(omega_n(d, n, basis).ket, u.conj().T @ psi) / d
    report.add("psi x Omega = sum of measurement branches / d", linalg.max_residual(lhs, rhs), tol)
    return report


@dataclass(frozen=True)
class SimulationResult:
    d: int
    seed: int
    trials: int
    histogram: list[int]
    min_fidelity: float

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "seed": self.seed,
            "trials": self.trials,
            "histogram": list(self.histogram),
            "min_fidelity": self.min_fidelity,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def simulate(d: int, psi, basis: WeylBasis | None = None, trials: int = 1024, seed: int = 0) -> SimulationResult:
    """Sample measurement outcomes, apply Bob's correction, record fidelity.

    Outcome probabilities are computed from the branch amplitudes (they come
    out 1/d^2 each); every corrected state reproduces psi, so min_fidelity
    stays at 1 up to roundoff.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    basis = basis if basis is not None else weyl_basis(d)
    psi = _require_unit(psi)
    state = linalg.kron_vec(psi, omega(d)).reshape(d, d, d)
    branches = []
    probs = []
    for n in range(1, d * d + 1):
        bra = omega_n(d, n, basis).ket.conj().reshape(d, d)
        branch = np.einsum("ca,cab->b", bra, state)
        branches.append(branch)
        probs.append(float(np.linalg.norm(branch) ** 2))
    probs = np.array(probs)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = np.zeros(d * d, dtype=int)
    min_fidelity = 1.0
    outcomes = rng.choice(d * d, size=trials, p=probs)
    for idx in outcomes:
        counts[idx] += 1
        corrected = basis.unitary(int(idx) + 1) @ linalg.normalize(branches[idx])
        fidelity = abs(linalg.inner(psi, corrected)) ** 2
        min_fidelity = min(min_fidelity, fidelity)
    return SimulationResult(d=d, seed=seed, trials=trials, histogram=counts.tolist(), min_fidelity=float(min_fidelity))


def tight_teleportation_check(d: int, rho, obs, basis: WeylBasis | None = None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """sum_n tr((rho x omega)(omega_n x T_n(O))) = tr(rho O) with
    T_n(O) = U_n^dag O U_n, and each term equal to tr(rho O)/d^2.

    rho and O may be any d x d matrices (rank-one non-hermitian forms
    included); no positivity is assumed.
    """
    basis = basis if basis is not None else weyl_basis(d)
    rho, obs = linalg.as_matrix(rho), linalg.as_matrix(obs)
    if rho.shape != (d, d) or obs.shape != (d, d):
        raise DimensionError(f"rho and O must be {d}x{d}")
    report = VerificationReport("tight-teleportation")
    target = np.trace(rho @ obs)
    rho_omega = kron(rho, omega_projector(d))
    total = 0.0 + 0.0j
    worst_term = 0.0
    for n in range(1, d * d + 1):
        u = basis.unitary(n)
        ket_n = omega_n(d, n, basis).ket
        t_n_obs = u.conj().T @ obs @ u
        term = np.trace(rho_omega @ kron(np.outer(ket_n, ket_n.conj()), t_n_obs))
        total += term
        worst_term = max(worst_term, abs(term - target / d ** 2))
    report.add("per-term value tr(rho O)/d^2", worst_term, tol)
    report.add("total sum = tr(rho O)", abs(total - target), tol)
    return report


def dense_coding_table(d: int, basis: WeylBasis | None = None) -> np.ndarray:
    """The d^2 x d^2 table tr(omega (T_n x 1)(omega_m)) with
    (T_n x 1)(omega_m) = (U_n^dag x 1) omega_m (U_n x 1)."""
    basis = basis if basis is not None else weyl_basis(d)
    w = omega_projector(d)
    kets = [omega_n(d, n, basis).ket for n in range(1, d * d + 1)]
    table = np.zeros((d * d, d * d), dtype=np.complex128)
    for n in range(d * d):
        un = kron(basis.unitary(n + 1), identity(d))
        for m in range(d * d):
            wm = np.outer(kets[m], kets[m].conj())
            table[n, m] = np.trace(w @ (un.conj().T @ wm @ un))
    return table


def dense_coding_check(d: int, basis: WeylBasis | None = None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """tr(omega (T_n x 1)(omega_m)) = delta_nm for all n, m."""
    report = VerificationReport("dense-coding")
    table = dense_coding_table(d, basis)
    report.add("delta table", linalg.max_residual(table, np.eye(d * d)), tol)
    return report
