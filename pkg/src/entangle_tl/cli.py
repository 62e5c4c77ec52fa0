"""Command-line harness: verification suites, the protocol simulator, the
eight-projector flow evaluator, and diagram rendering/serialization.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
The default seed is 0, overridable by the ENTANGLE_TL_SEED environment
variable; an explicit --seed always wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import braid, diagram, maxent, qubit, render, teleport, tlalgebra
from . import linalg
from .report import VerificationReport

SUITES = ("bell", "braid", "virtual", "maxent", "teleport", "tight", "dense",
          "tl", "brauer", "flow", "all")


@dataclass
class RunConfig:
    dimension: int = 2
    strands: int = 3
    tolerance: float = linalg.DEFAULT_TOL
    seed: int = 0
    trials: int = 1024
    output_format: str = "text"


def _merge(name: str, reports: list[VerificationReport]) -> VerificationReport:
    merged = VerificationReport(name)
    for r in reports:
        for c in r.checks:
            prefix = f"{r.suite_name}: " if r.suite_name != name else ""
            merged.checks.append(type(c)(prefix + c.identity_name, c.max_residual, c.passed))
        merged.details.extend(r.details)
    merged.checks.sort(key=lambda c: c.identity_name)
    return merged


def _random_unitary(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(g)
    return q


def _random_ket(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def run_suite(suite: str, cfg: RunConfig) -> VerificationReport:
    d, tol = cfg.dimension, cfg.tolerance
    rng = np.random.default_rng(cfg.seed)
    reports: list[VerificationReport] = []

    if suite in ("bell", "all"):
        reports.append(qubit.check_local_unitary_relations(tol))
        reports.append(qubit.check_bell_matrix_identities(tol))
        reports.append(qubit.check_permutation_expansion(tol))
    if suite in ("braid", "all"):
        b = qubit.bell_matrix()
        r = braid.check_braid_relation(b, tol)
        b1, b2 = braid.embed(b, 1, 3), braid.embed(b, 2, 3)
        closed = (linalg.kron(np.eye(2), b @ b) + linalg.kron(b @ b, np.eye(2))) / np.sqrt(2)
        r.add("b1 b2 b1 equals (1 x B^2 + B^2 x 1)/sqrt(2)",
              linalg.max_residual(b1 @ b2 @ b1, closed), tol)
        r.add("b2 b1 b2 equals (1 x B^2 + B^2 x 1)/sqrt(2)",
              linalg.max_residual(b2 @ b1 @ b2, closed), tol)
        reports.append(r)
        reports.append(braid.check_virtual_mixed(b, qubit.permutation_qubit(), tol))
        if d != 2:
            reports.append(braid.check_braid_relation(braid.swap(d), tol))
    if suite in ("virtual", "all"):
        reports.append(braid.check_virtual_relations(braid.swap(d), tol))
        r = VerificationReport("teleport-swapping")
        ts, rev = braid.teleport_swap(d), braid.teleport_swap_reverse(d)
        worst = 0.0
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    v = linalg.kron_vec(linalg.product_ket(d, i, j), linalg.basis_ket(d, k))
                    w = linalg.kron_vec(linalg.basis_ket(d, k), linalg.product_ket(d, i, j))
                    worst = max(worst, linalg.max_residual(ts @ v, w))
                    worst = max(worst, linalg.max_residual(rev @ w, v))
        r.add("|k>|ij> = (Px1)(1xP)|ij>|k> and back", worst, tol)
        r.add("reverse undoes forward", linalg.max_residual(rev @ ts, np.eye(d ** 3)), tol)
        reports.append(r)
    if suite in ("maxent", "all"):
        reports.append(maxent.completeness_check(d, tol=tol))
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        reports.append(maxent.slide_identity_check(m, d, tol))
        mp = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        reports.append(maxent.trace_identities_check(
            m, mp, _random_unitary(rng, d), _random_unitary(rng, d), d, tol))
        u, v = _random_unitary(rng, d), _random_unitary(rng, d)
        reports.append(maxent.transfer_composition(u, v, d, tol))
        reports.append(maxent.transfer_composition(u, u, d, tol))
    if suite in ("teleport", "all"):
        a, b_amp = _random_ket(rng, 2)
        reports.append(teleport.teleport_equation_qubit_check(a, b_amp, tol))
        reports.append(teleport.bell_matrix_form_check(tol, seed=cfg.seed))
        reports.append(teleport.virtual_form_check(tol, seed=cfg.seed))
        psi = _random_ket(rng, d)
        reports.append(teleport.qudit_resolution_check(d, psi, tol=tol))
        r = VerificationReport("measurement-form")
        basis = maxent.weyl_basis(d)
        worst_weight = 0.0
        for n in range(1, d * d + 1):
            outcome = teleport.measurement_form(d, n, psi, basis, tol)
            worst_weight = max(worst_weight, abs(outcome.amplitude_weight - 1 / d ** 2))
        r.add("branch weight 1/d^2 for every outcome", worst_weight, tol)
        reports.append(r)
    if suite in ("tight", "all"):
        rho = np.outer(_random_ket(rng, d), _random_ket(rng, d).conj())
        obs = np.outer(_random_ket(rng, d), _random_ket(rng, d).conj())
        reports.append(teleport.tight_teleportation_check(d, rho, obs, tol=tol))
    if suite in ("dense", "all"):
        r = teleport.dense_coding_check(d, tol=tol)
        if suite == "dense":
            table = teleport.dense_coding_table(d)
            r.note(f"delta table ({d * d}x{d * d}):")
            for row in np.real_if_close(np.round(table, 12)):
                r.note("  " + " ".join(f"{val.real:6.3f}" for val in row))
        reports.append(r)
    if suite in ("tl", "all"):
        reports.append(tlalgebra.check_tl_axioms(cfg.strands, d, tol))
        for idx in range(1, d * d + 1):
            reports.append(tlalgebra.check_tl_decorated(min(cfg.strands, 3), d, idx, tol=tol))
    if suite in ("brauer", "all"):
        reports.append(tlalgebra.check_brauer_mixed(cfg.strands, d, tol))
    if suite in ("flow", "all"):
        reports.append(tlalgebra.check_flow(d, samples=10, seed=cfg.seed,
                                            tol=max(tol, linalg.FLOW_TOL)))
    return _merge(suite, reports)


# ---------------------------------------------------------------------------
# argument handling


def _parse_psi(text: str, d: int) -> np.ndarray:
    if text == "uniform":
        return np.ones(d, dtype=np.complex128) / np.sqrt(d)
    if text.startswith("basis"):
        k = int(text[len("basis"):])
        return linalg.basis_ket(d, k)
    parts = [complex(p.strip().replace("i", "j")) for p in text.split(",")]
    v = np.array(parts, dtype=np.complex128)
    if v.shape != (d,):
        raise ValueError(f"psi needs {d} amplitudes, got {len(parts)}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError("psi must be normalized")
    return v


def _parse_operator(entry, d: int) -> np.ndarray:
    if isinstance(entry, str):
        name = entry.strip().lower()
        if name in ("identity", "i", "1"):
            return np.eye(d, dtype=np.complex128)
        if name in ("sigma1", "sigma2", "sigma3") and d == 2:
            return qubit.pauli(int(name[-1]))
        if name.startswith("weyl:"):
            a, b = (int(x) for x in name[len("weyl:"):].split(","))
            return np.linalg.matrix_power(maxent.shift(d), a) @ np.linalg.matrix_power(maxent.clock(d), b)
        raise ValueError(f"unknown operator name {entry!r}")
    m = np.array([[complex(c[0], c[1]) for c in row] for row in entry])
    if m.shape != (d, d):
        raise ValueError(f"operator must be {d}x{d}")
    return m


def _emit(report: VerificationReport, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(report.to_text())
    return 0 if report.overall_pass else 1


def cmd_verify(args) -> int:
    cfg = RunConfig(dimension=args.d, strands=args.n, tolerance=args.tol,
                    seed=args.seed, trials=args.trials, output_format=args.format)
    report = run_suite(args.suite, cfg)
    return _emit(report, cfg.output_format)


def cmd_simulate(args) -> int:
    try:
        psi = _parse_psi(args.psi, args.d)
    except (ValueError, linalg.DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = teleport.simulate(args.d, psi, trials=args.trials, seed=args.seed)
    if args.format == "json":
        print(result.to_json())
    else:
        print(f"d={result.d} trials={result.trials} seed={result.seed}")
        print("outcome histogram:", result.histogram)
        print(f"min fidelity: {result.min_fidelity:.15f}")
    return 0


def cmd_flow(args) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: {args.spec}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        d = int(data.get("d", args.d))
        entries = data["operators"]
        ops = [_parse_operator(entry, d) for entry in entries]
        phi = (_parse_psi(data["phi"], d) if isinstance(data.get("phi"), str)
               else np.array([complex(c[0], c[1]) for c in data["phi"]], dtype=np.complex128)
               if "phi" in data else linalg.basis_ket(d, 0))
        out = tlalgebra.flow_apply(ops, phi, d)
        expected = tlalgebra.flow_closed_form(ops, phi, d)
    except (KeyError, ValueError, linalg.DimensionError) as exc:
        print(f"error: {args.spec}: {exc}", file=sys.stderr)
        return 2
    residual = linalg.max_residual(out, expected)
    if args.format == "json":
        print(json.dumps({
            "d": d,
            "output": [[float(z.real), float(z.imag)] for z in out],
            "closed_form": [[float(z.real), float(z.imag)] for z in expected],
            "residual": residual,
        }, sort_keys=True))
    else:
        print("flow output vector:")
        for z in out:
            print(f"  {z.real:+.12f} {z.imag:+.12f}i")
        print(f"closed-form residual: {residual:.3e}")
    return 0 if residual <= args.tol else 1


def cmd_render(args) -> int:
    try:
        with open(args.diagram, "r", encoding="utf-8") as fh:
            text = fh.read()
        diag = diagram.loads(text)
    except OSError as exc:
        print(f"error: cannot read {args.diagram}: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: {args.diagram}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {args.diagram}: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(diagram.dumps(diag))
    else:
        print(render.render(diag))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entangle-tl",
        description="Verify teleportation / braid / Temperley-Lieb identities numerically.")
    default_seed = int(os.environ.get("ENTANGLE_TL_SEED", "0"))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=False):
        p.add_argument("--d", type=int, default=2, help="local dimension (default 2)")
        if with_n:
            p.add_argument("--n", type=int, default=3, help="strand count (default 3)")
        p.add_argument("--tol", type=float, default=linalg.DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=default_seed)
        p.add_argument("--trials", type=int, default=1024)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    common(p_verify, with_n=True)
    p_verify.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="Monte Carlo teleportation protocol")
    common(p_sim)
    p_sim.add_argument("--psi", default="uniform",
                       help="comma-separated amplitudes, 'uniform', or 'basisK'")
    p_sim.set_defaults(func=cmd_simulate)

    p_flow = sub.add_parser("flow", help="evaluate the eight-projector flow")
    common(p_flow)
    p_flow.add_argument("--spec", required=True, help="JSON file with d and operators")
    p_flow.set_defaults(func=cmd_flow)

    p_render = sub.add_parser("render", help="ASCII-render a serialized diagram")
    p_render.add_argument("--diagram", required=True, help="diagram JSON file")
    p_render.add_argument("--format", choices=("text", "json"), default="text")
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, linalg.DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
