"""Temperley-Lieb / Brauer axiom checks and the eight-projector
quantum-information-flow evaluation.

The TL idempotents are realized both as decorated diagrams and as dense
matrices E_i = 1 x ... x omega x ... x 1 built from the maximally entangled
projector; virtual crossings are swap embeddings.  The loop parameter is the
local dimension d.
"""

from __future__ import annotations

import numpy as np

from . import diagram as dg
from . import linalg
from .braid import StrandOperator, embed, swap
from .linalg import DEFAULT_TOL, FLOW_TOL, DimensionError, identity
from .maxent import WeylBasis, omega_projector, phi_of, weyl_basis
from .report import VerificationReport


def e_matrix(i: int, n: int, d: int) -> np.ndarray:
    """Dense TL idempotent: the omega projector on strands (i, i+1) of n."""
    return embed(StrandOperator(d, omega_projector(d)), i, n)


def v_matrix(i: int, n: int, d: int) -> np.ndarray:
    """Dense virtual crossing: the swap on strands (i, i+1) of n."""
    return embed(StrandOperator(d, swap(d)), i, n)


def decorated_e_gen(i: int, n: int, op_label: str) -> dg.DecoratedDiagram:
    """e_gen with the local unitary on the emitted pair and its adjoint on
    the absorbed pair: evaluates to omega_n (x) identities."""
    base = dg.e_gen(i, n)
    strands = []
    for s in base.strands:
        if s.is_arc and s.start.side == dg.TOP:
            strands.append(dg.Strand(s.start, s.end, (dg.Decoration(op_label, "dagger"),)))
        elif s.is_arc:
            strands.append(dg.Strand(s.start, s.end, (dg.Decoration(op_label, "plain"),)))
        else:
            strands.append(s)
    return dg.DecoratedDiagram(base.top, base.bottom, tuple(strands), base.loops, base.scalar)


def check_tl_axioms(n: int, d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """E_i^2 = E_i, E_i^dag = E_i, E_i E_{i+-1} E_i = d^-2 E_i and far
    commutativity, checked diagrammatically (structure plus exact scalar
    bookkeeping) and on dense matrices."""
    if n < 3:
        raise ValueError("adjacent TL relations need n >= 3")
    report = VerificationReport(f"tl-axioms n={n} d={d}")
    mats = {i: e_matrix(i, n, d) for i in range(1, n)}

    for i in range(1, n):
        ei = mats[i]
        report.add(f"E_{i}^2 = E_{i} (dense)", linalg.max_residual(ei @ ei, ei), tol)
        report.add(f"E_{i} hermitian (dense)", linalg.max_residual(ei, ei.conj().T), tol)
        di = dg.e_gen(i, n)
        ratio = dg.structural_ratio(dg.compose(di, di), di, d)
        ok = ratio is not None and abs(ratio - 1.0) <= tol
        report.add_bool(f"E_{i}^2 = E_{i} (diagram: loop cancels cup/cap powers)", ok)
        adj = dg.adjoint_diagram(di)
        report.add_bool(f"E_{i} self-adjoint (diagram)", adj == di)

    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            lhs = mats[i] @ mats[j] @ mats[i]
            report.add(f"E_{i}E_{j}E_{i} = d^-2 E_{i} (dense)",
                       linalg.max_residual(lhs, mats[i] / d ** 2), tol)
            di, dj = dg.e_gen(i, n), dg.e_gen(j, n)
            composed = dg.compose(dg.compose(di, dj), di)
            ratio = dg.structural_ratio(composed, di, d)
            ok = ratio is not None and abs(ratio - 1.0 / d ** 2) <= tol
            report.add_bool(
                f"E_{i}E_{j}E_{i} = d^-2 E_{i} (diagram: half-power drop -4)", ok)

    for i in range(1, n):
        for j in range(i + 2, n):
            lhs, rhs = mats[i] @ mats[j], mats[j] @ mats[i]
            report.add(f"E_{i}E_{j} = E_{j}E_{i} (dense)", linalg.max_residual(lhs, rhs), tol)
            ci = dg.compose(dg.e_gen(i, n), dg.e_gen(j, n))
            cj = dg.compose(dg.e_gen(j, n), dg.e_gen(i, n))
            report.add_bool(f"E_{i}E_{j} = E_{j}E_{i} (diagram)", ci == cj)
    return report


def check_tl_decorated(n: int, d: int, basis_index: int,
                       basis: WeylBasis | None = None,
                       tol: float = DEFAULT_TOL) -> VerificationReport:
    """The decorated idempotents built from omega_n satisfy the same axioms."""
    if n < 3:
        raise ValueError("adjacent TL relations need n >= 3")
    basis = basis if basis is not None else weyl_basis(d)
    u = basis.unitary(basis_index)
    report = VerificationReport(f"tl-decorated n={n} d={d} basis={basis_index}")
    w = omega_projector(d)
    wn = linalg.kron(u, identity(d)) @ w @ linalg.kron(u, identity(d)).conj().T
    mats = {i: embed(StrandOperator(d, wn), i, n) for i in range(1, n)}
    ops = {"u": u}

    for i in range(1, n):
        ei = mats[i]
        report.add(f"Et_{i}^2 = Et_{i}", linalg.max_residual(ei @ ei, ei), tol)
        report.add(f"Et_{i} hermitian", linalg.max_residual(ei, ei.conj().T), tol)
        evaluated = dg.evaluate(decorated_e_gen(i, n, "u"), d, ops)
        report.add(f"decorated diagram evaluates to Et_{i}",
                   linalg.max_residual(evaluated, ei), tol)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            lhs = mats[i] @ mats[j] @ mats[i]
            report.add(f"Et_{i}Et_{j}Et_{i} = d^-2 Et_{i}",
                       linalg.max_residual(lhs, mats[i] / d ** 2), tol)
    for i in range(1, n):
        for j in range(i + 2, n):
            report.add(f"Et_{i}Et_{j} = Et_{j}Et_{i}",
                       linalg.max_residual(mats[i] @ mats[j], mats[j] @ mats[i]), tol)
    return report


def check_brauer_mixed(n: int, d: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Mixed relations between the TL idempotents and the swap crossings:
    E_i v_i = v_i E_i = E_i, far commutativity, and the loop-parameter
    relations v_{i+-1} v_i E_{i+-1} = d E_i E_{i+-1} = E_i v_{i+-1} v_i."""
    if n < 3:
        raise ValueError("mixed adjacent relations need n >= 3")
    report = VerificationReport(f"brauer-mixed n={n} d={d}")
    e = {i: e_matrix(i, n, d) for i in range(1, n)}
    v = {i: v_matrix(i, n, d) for i in range(1, n)}

    for i in range(1, n):
        report.add(f"E_{i} v_{i} = E_{i}", linalg.max_residual(e[i] @ v[i], e[i]), tol)
        report.add(f"v_{i} E_{i} = E_{i}", linalg.max_residual(v[i] @ e[i], e[i]), tol)
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) > 1:
                report.add(f"E_{i} v_{j} = v_{j} E_{i}",
                           linalg.max_residual(e[i] @ v[j], v[j] @ e[i]), tol)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            target = d * (e[i] @ e[j])
            report.add(f"v_{j} v_{i} E_{j} = d E_{i} E_{j}",
                       linalg.max_residual(v[j] @ v[i] @ e[j], target), tol)
            report.add(f"E_{i} v_{j} v_{i} = d E_{i} E_{j}",
                       linalg.max_residual(e[i] @ v[j] @ v[i], target), tol)
    return report


# ---------------------------------------------------------------------------
# the eight-projector information flow


FLOW_LABELS = tuple(f"u{i}" for i in range(1, 9))


def flow_diagram() -> dg.DecoratedDiagram:
    """The five-strand eight-projector flow diagram, frozen.

    The wiring is pinned by the closed form: the input zigzags through one
    arc of each projector in label order, entering on the leg the flavor
    pattern dictates (dagger = absorbed with the flow, transpose /conjugate =
    traversed against it); the leftover arcs of projectors 2 and 5, and of 4
    and 7, glue into the two trace loops, and the remaining four arcs reach
    the boundary.  Each of the sixteen arcs carries d^(-1/2).
    """
    T, B = dg.TOP, dg.BOTTOM
    E, D, S = dg.Endpoint, dg.Decoration, dg.Strand
    path = S(E(T, 0), E(B, 4), (
        D("u1", "dagger"),
        D("u2", "transpose"),
        D("u3", "dagger"),
        D("u4", "plain"),
        D("u5", "conjugate"),
        D("u6", "transpose"),
        D("u7", "dagger"),
        D("u8", "transpose"),
    ))
    strands = (
        path,
        S(E(T, 1), E(T, 2), (D("u6", "dagger"),)),
        S(E(T, 3), E(T, 4), (D("u8", "dagger"),)),
        S(E(B, 0), E(B, 1), (D("u1", "plain"),)),
        S(E(B, 2), E(B, 3), (D("u3", "plain"),)),
    )
    loops = (
        (D("u2", "dagger"), D("u5", "plain")),
        (D("u4", "dagger"), D("u7", "plain")),
    )
    return dg.DecoratedDiagram(5, 5, strands, loops, dg.ScalarFactor(1.0, -16))


def _check_flow_ops(ops, d: int) -> list[np.ndarray]:
    if len(ops) != 8:
        raise ValueError("the flow takes exactly eight operators")
    mats = []
    for k, u in enumerate(ops, start=1):
        m = linalg.as_matrix(u)
        if m.shape != (d, d):
            raise DimensionError(f"operator {k} must be {d}x{d}")
        if not linalg.is_unitary(m, 1e-9):
            raise ValueError(f"operator {k} is not unitary")
        mats.append(m)
    return mats


def flow_closed_form(ops, phi, d: int) -> np.ndarray:
    """(1/d^6) tr(U2^dag U5) tr(U4^dag U7)
    (U8^T U7^dag U6^T U5^* U4 U3^dag U2^T U1^dag) |phi>."""
    u = _check_flow_ops(ops, d)
    phi = linalg.as_vector(phi)
    chain = (u[7].T @ u[6].conj().T @ u[5].T @ u[4].conj() @ u[3]
             @ u[2].conj().T @ u[1].T @ u[0].conj().T)
    t1 = np.trace(u[1].conj().T @ u[4])
    t2 = np.trace(u[3].conj().T @ u[6])
    return (t1 * t2 / d ** 6) * (chain @ phi)


def flow_apply(ops, phi, d: int, evaluator=dg.evaluate) -> np.ndarray:
    """Contract the flow diagram against |phi> on strand 1.

    The absorbed boundary arcs are fed their own entangled kets and the
    emitted ones are projected onto theirs, which just resolves the four
    boundary projectors; what remains is the strand-5 output vector.
    """
    u = _check_flow_ops(ops, d)
    phi = linalg.as_vector(phi)
    if phi.shape != (d,):
        raise DimensionError(f"phi must have dimension {d}")
    table = dict(zip(FLOW_LABELS, u))
    matrix = evaluator(flow_diagram(), d, table)
    state_in = linalg.kron_vec(phi, phi_of(u[5], d), phi_of(u[7], d))
    out_full = (matrix @ state_in).reshape(d * d, d * d, d)
    return np.einsum("i,j,ijk->k", phi_of(u[0], d).conj(), phi_of(u[2], d).conj(), out_full)


def quantum_flow(ops, phi, d: int, tol: float = FLOW_TOL) -> np.ndarray:
    """Evaluate the flow diagram applied to |phi> and verify it matches the
    closed form; returns the output vector."""
    got = flow_apply(ops, phi, d)
    expected = flow_closed_form(ops, phi, d)
    residual = linalg.max_residual(got, expected)
    if residual > tol:
        raise ValueError(f"flow does not match the closed form: residual {residual:.3e}")
    return got


def check_flow(d: int, samples: int = 10, seed: int = 0, tol: float = FLOW_TOL) -> VerificationReport:
    """Random unitary octuples plus the two special cases."""
    report = VerificationReport(f"flow d={d}")
    rng = np.random.default_rng(seed)

    def random_unitary():
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, r = np.linalg.qr(g)
        return q @ np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, size=d)))

    worst_eval = 0.0
    worst_brute = 0.0
    for _ in range(samples):
        ops = [random_unitary() for _ in range(8)]
        phi = rng.normal(size=d) + 1j * rng.normal(size=d)
        phi = phi / np.linalg.norm(phi)
        expected = flow_closed_form(ops, phi, d)
        worst_eval = max(worst_eval, linalg.max_residual(flow_apply(ops, phi, d), expected))
        worst_brute = max(worst_brute, linalg.max_residual(
            flow_apply(ops, phi, d, evaluator=dg.brute_force_evaluate), expected))
    report.add("random octuples: evaluate vs closed form", worst_eval, tol)
    report.add("random octuples: brute-force contraction vs closed form", worst_brute, tol)

    one = identity(d)
    phi = linalg.basis_ket(d, 0)
    got = flow_apply([one] * 8, phi, d)
    report.add("all-identity: output = phi / d^4",
               linalg.max_residual(got, phi / d ** 4), 1e-12)

    basis = weyl_basis(d)
    if d >= 2:
        ops = [one] * 8
        ops[1] = basis.unitary(1)   # U_2 = 1
        ops[4] = basis.unitary(2)   # U_5 trace-orthogonal to U_2
        got = flow_apply(ops, phi, d)
        report.add("orthogonal pair U2, U5: zero output",
                   linalg.max_residual(got, np.zeros(d)), 1e-12)
    return report
