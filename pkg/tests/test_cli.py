import json
import subprocess
import sys

import pytest

from entangle_tl import diagram as dg
from entangle_tl.cli import main
from entangle_tl.render import render
from entangle_tl.report import validate_report_dict


def run_cli(args, env=None):
    cmd = [sys.executable, "-m", "entangle_tl.cli"] + args
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def test_verify_bell_passes(capsys):
    assert main(["verify", "bell"]) == 0
    out = capsys.readouterr().out
    assert "B^4 = -1" in out
    assert "pass" in out


def test_verify_unknown_suite_exits_2():
    result = run_cli(["verify", "nonsense"])
    assert result.returncode == 2


@pytest.mark.parametrize("suite", ["bell", "braid", "virtual", "maxent", "teleport",
                                   "tight", "dense", "tl", "brauer", "flow"])
def test_verify_each_suite_d2(capsys, suite):
    assert main(["verify", suite, "--d", "2"]) == 0
    capsys.readouterr()


def test_verify_all_d2_to_d4(capsys):
    for d in (2, 3, 4):
        assert main(["verify", "all", "--d", str(d)]) == 0
        capsys.readouterr()


def test_verify_json_schema_and_agreement(capsys):
    assert main(["verify", "tl", "--d", "3", "--n", "4", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    validate_report_dict(data)
    assert data["overall_pass"] is True
    assert main(["verify", "tl", "--d", "3", "--n", "4"]) == 0
    text = capsys.readouterr().out
    # text and json agree on residuals to printed precision
    for check in data["checks"]:
        token = f"{check['max_residual']:.3e}"
        assert token in text


def test_verify_dense_prints_delta_table(capsys):
    assert main(["verify", "dense", "--d", "2"]) == 0
    out = capsys.readouterr().out
    assert "delta table" in out
    assert out.count("1.000") >= 4


def test_simulate_text_and_json(capsys):
    assert main(["simulate", "--d", "2", "--trials", "1000", "--seed", "7",
                 "--psi", "0.6,0.8"]) == 0
    out = capsys.readouterr().out
    assert "min fidelity: 1.0000" in out
    assert main(["simulate", "--d", "2", "--trials", "64", "--seed", "7",
                 "--psi", "0.6,0.8", "--format", "json"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert set(record) == {"d", "seed", "trials", "histogram", "min_fidelity"}


def test_simulate_rejects_unnormalized(capsys):
    assert main(["simulate", "--psi", "1,1"]) == 2
    capsys.readouterr()


def test_simulate_deterministic():
    a = run_cli(["simulate", "--d", "3", "--seed", "7", "--psi", "uniform"])
    b = run_cli(["simulate", "--d", "3", "--seed", "7", "--psi", "uniform"])
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_seed_env_var_override():
    import os
    env = dict(os.environ)
    env["ENTANGLE_TL_SEED"] = "7"
    with_env = run_cli(["simulate", "--d", "2", "--psi", "uniform", "--format", "json"], env=env)
    explicit = run_cli(["simulate", "--d", "2", "--psi", "uniform", "--seed", "7",
                        "--format", "json"])
    assert with_env.stdout == explicit.stdout
    # explicit --seed beats the environment
    env["ENTANGLE_TL_SEED"] = "99"
    overridden = run_cli(["simulate", "--d", "2", "--psi", "uniform", "--seed", "7",
                          "--format", "json"], env=env)
    assert overridden.stdout == explicit.stdout


def test_flow_command_identities(tmp_path, capsys):
    spec = tmp_path / "flow.json"
    spec.write_text(json.dumps({"d": 2, "operators": ["identity"] * 8, "phi": "basis0"}))
    assert main(["flow", "--spec", str(spec)]) == 0
    out = capsys.readouterr().out
    assert "closed-form residual" in out
    # phi_C / d^4 = (1/16, 0)
    assert "+0.062500000000" in out


def test_flow_command_json_and_matrices(tmp_path, capsys):
    ident = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
    spec = tmp_path / "flow.json"
    spec.write_text(json.dumps({"d": 2, "operators": [ident] * 4 + ["sigma1"] * 4}))
    assert main(["flow", "--spec", str(spec), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["residual"] <= 1e-9
    assert len(data["output"]) == 2


def test_flow_command_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json\n")
    assert main(["flow", "--spec", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.json:1" in err
    missing = tmp_path / "missing.json"
    assert main(["flow", "--spec", str(missing)]) == 2
    capsys.readouterr()
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"d": 2, "operators": ["identity"] * 5}))
    assert main(["flow", "--spec", str(wrong)]) == 2
    capsys.readouterr()


def test_render_command_generator(tmp_path, capsys):
    f = tmp_path / "e13.json"
    f.write_text(dg.dumps(dg.e_gen(1, 3)))
    assert main(["render", "--diagram", str(f)]) == 0
    out = capsys.readouterr().out
    assert "\\_" in out and "_/" in out          # cup
    assert "/‾" in out and "‾\\" in out  # cap
    assert "T2" in out and "B2" in out


def test_render_command_crossing(tmp_path, capsys):
    f = tmp_path / "v12.json"
    f.write_text(dg.dumps(dg.v_gen(1, 2)))
    assert main(["render", "--diagram", str(f)]) == 0
    assert "×" in capsys.readouterr().out


def test_render_round_trips_through_json(tmp_path, capsys):
    diag = dg.decorate(dg.e_gen(1, 3), 0, 0, dg.Decoration("U", "dagger"))
    f = tmp_path / "d.json"
    f.write_text(dg.dumps(diag))
    assert main(["render", "--diagram", str(f), "--format", "json"]) == 0
    assert dg.loads(capsys.readouterr().out.strip()) == diag


def test_render_malformed_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"top": 1, "bottom": 0, "strands": [], "loops": [], '
                 '"scalar": {"coeff": [1, 0], "half_power": 0}}')
    assert main(["render", "--diagram", str(f)]) == 2
    capsys.readouterr()


def test_render_shows_decorations(capsys):
    diag = dg.decorate(dg.e_gen(1, 2), 0, 0, dg.Decoration("U2", "dagger"))
    art = render(diag)
    assert "•U2" in art
