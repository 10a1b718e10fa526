#!/usr/bin/env python3
"""
End-to-end tests for the ou-impact command line
"""

import json

import pandas as pd
import pytest

import src.main as cli
from src.analytics import ModelParams, analytic_value
from src.datafeed.price_paths import TimeGrid
from src.simulation.montecarlo import perturbation_study


def write_doc(tmp_path, document, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


VALUE_DOC = {
    "command": "value",
    "model": {"mu": 1.5, "s0": 1.0, "delta": 1.0, "horizon": 1.0},
    "tolerance": 1e-10,
}


def zero_policy_doc(tmp_path):
    return {
        "command": "montecarlo",
        "seed": 1,
        "model": {"mu": 1.5, "s0": 1.0, "delta": 1.0, "horizon": 1.0},
        "simulation": {"n_steps": 50, "n_paths": 64, "policy": "zero",
                       "paths_csv": str(tmp_path / "paths.csv")},
    }


def test_value_command(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(["value", "--config", write_doc(tmp_path, VALUE_DOC), "--out", str(out)], capsys)
    assert code == 0
    report = json.loads(stdout)
    assert out.read_text(encoding="utf-8") == stdout
    assert report["command"] == "value"
    assert report["pass"] is True
    assert abs(report["duality_gap"]) <= 1e-8
    expected = analytic_value(ModelParams(mu=1.5, s0=1.0, delta=1.0, horizon=1.0))
    assert report["analytic_value"] == pytest.approx(expected, rel=1e-12)
    assert len(report["config_digest"]) == 64


def test_report_keys_are_sorted(tmp_path, capsys):
    _, stdout, _ = run(["value", "--config", write_doc(tmp_path, VALUE_DOC)], capsys)
    keys = list(json.loads(stdout).keys())
    assert keys == sorted(keys)


def test_malformed_json_writes_nothing(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"command": "value", "model": {', encoding="utf-8")
    out = tmp_path / "report.json"
    code, stdout, stderr = run(["value", "--config", str(path), "--out", str(out)], capsys)
    assert code == 1
    assert stdout == ""
    assert not out.exists()
    assert "malformed JSON" in stderr


def test_missing_config_file(tmp_path, capsys):
    code, _, stderr = run(["value", "--config", str(tmp_path / "absent.json")], capsys)
    assert code == 1
    assert "--config" in stderr


@pytest.mark.parametrize("model_patch, field", [
    ({"delta": -1.0}, "model.delta"),
    ({"horizon": 0.0}, "model.horizon"),
    ({"mu": "one"}, "model.mu"),
    ({"phi0": 0.5}, "model.phi0"),
])
def test_invalid_field_is_named(tmp_path, capsys, model_patch, field):
    document = json.loads(json.dumps(VALUE_DOC))
    document["model"].update(model_patch)
    code, _, stderr = run(["value", "--config", write_doc(tmp_path, document)], capsys)
    assert code == 1
    assert field in stderr


def test_command_mismatch(tmp_path, capsys):
    code, _, stderr = run(["oracles", "--config", write_doc(tmp_path, VALUE_DOC)], capsys)
    assert code == 1
    assert "command" in stderr


def test_internal_error_exit_code(tmp_path, capsys, monkeypatch):
    def explode(rc, trace):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "value", explode)
    code, stdout, stderr = run(["value", "--config", write_doc(tmp_path, VALUE_DOC)], capsys)
    assert code == 3
    assert stdout == ""
    assert "boom" in stderr


def test_zero_policy_montecarlo(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code, stdout, _ = run(["montecarlo", "--config", write_doc(tmp_path, zero_policy_doc(tmp_path)),
                           "--trace", str(trace)], capsys)
    assert code == 0
    report = json.loads(stdout)
    assert report["estimate"] == -1.0
    assert report["std_error"] == 0.0
    assert report["policy"] == "zero"

    paths = pd.read_csv(tmp_path / "paths.csv")
    assert list(paths.columns) == ["path_index", "terminal_wealth", "utility"]
    assert len(paths) == 64
    assert (paths["utility"] == -1.0).all()

    frame = pd.read_csv(trace)
    assert list(frame.columns) == ["t", "S", "phi", "Phi"]
    assert len(frame) == 51
    assert frame["t"].iloc[-1] == 1.0


def test_montecarlo_reruns_are_byte_identical(tmp_path, capsys):
    document = zero_policy_doc(tmp_path)
    document["simulation"].update({"policy": "optimal", "n_paths": 500})
    config_path = write_doc(tmp_path, document)
    outputs = []
    for attempt in range(2):
        out = tmp_path / f"report{attempt}.json"
        code, _, _ = run(["montecarlo", "--config", config_path, "--out", str(out)], capsys)
        assert code in (0, 2)
        outputs.append((out.read_bytes(), (tmp_path / "paths.csv").read_bytes()))
    assert outputs[0] == outputs[1]


def test_seed_override(tmp_path, capsys):
    document = zero_policy_doc(tmp_path)
    document["simulation"]["policy"] = "optimal"
    config_path = write_doc(tmp_path, document)
    _, first, _ = run(["montecarlo", "--config", config_path], capsys)
    _, second, _ = run(["montecarlo", "--config", config_path, "--seed", "7"], capsys)
    first, second = json.loads(first), json.loads(second)
    assert first["seed"] == 1 and second["seed"] == 7
    assert first["config_digest"] != second["config_digest"]
    assert first["estimate"] != second["estimate"]


def test_bad_seed_argument(tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["value", "--config", write_doc(tmp_path, VALUE_DOC), "--seed", "-3"])


def test_trivial_oracle_cases(tmp_path, capsys):
    document = {
        "command": "oracles",
        "model": {"mu": 0.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0},
        "oracles": {
            "n": 100,
            "lemma2_cases": [{"alpha": 1.0, "s": 0.0, "T": 1.0, "x": 0.0, "y": 0.0}],
            "lemma3_cases": [{"s": 0.0, "T": 1.0, "theta": 0.0, "phi0": 0.0, "delta": 1.0}],
        },
    }
    code, stdout, _ = run(["oracles", "--config", write_doc(tmp_path, document)], capsys)
    assert code == 0
    report = json.loads(stdout)
    assert report["lemma2"][0]["discrete"] == 0.0
    assert report["lemma3"][0]["discrete_integral"] == 0.0


def test_default_oracles(tmp_path, capsys):
    document = {"command": "oracles", "model": {"mu": 0.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0}}
    code, stdout, _ = run(["oracles", "--config", write_doc(tmp_path, document)], capsys)
    report = json.loads(stdout)
    assert code == 0
    assert len(report["lemma2"]) == 18
    assert len(report["lemma3"]) == 36
    assert all(r <= 0.3 for r in report["convergence"]["ratios"])


def test_coarse_oracle_fails_acceptance(tmp_path, capsys):
    document = {
        "command": "oracles",
        "model": {"mu": 0.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0},
        "oracles": {"n": 2},
    }
    code, stdout, _ = run(["oracles", "--config", write_doc(tmp_path, document)], capsys)
    assert code == 2
    assert json.loads(stdout)["pass"] is False


def test_oracle_case_field_path(tmp_path, capsys):
    document = {
        "command": "oracles",
        "model": {"mu": 0.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0},
        "oracles": {"lemma3_cases": [{"s": 0.0, "T": 1.0, "theta": 1.0, "phi0": 0.0}]},
    }
    code, _, stderr = run(["oracles", "--config", write_doc(tmp_path, document)], capsys)
    assert code == 1
    assert "oracles.lemma3_cases[0].delta" in stderr


def test_limits_command(tmp_path, capsys):
    document = {
        "command": "limits",
        "seed": 3,
        "model": {"mu": 1.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0},
    }
    code, stdout, _ = run(["limits", "--config", write_doc(tmp_path, document)], capsys)
    report = json.loads(stdout)
    assert code == 0
    assert report["kappa_frictionless"]["pass"]
    assert report["value_shape_saturation"]["pass"]
    assert report["frictionless"]["zero_shock"]["reports"][1]["ratio"] <= 0.05
    assert report["cesaro_mean"]["corrected_gap"] < report["cesaro_mean"]["uncorrected_gap"]


def test_terminal_coupled_oracle_report(tmp_path, capsys):
    document = {
        "command": "oracles",
        "model": {"mu": 0.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0},
        "oracles": {
            "n": 4000,
            "lemma2_cases": [{"alpha": 1.0, "s": 0.0, "T": 1.0, "x": 1.0, "y": 0.0}],
            "lemma3_cases": [{"s": 0.0, "T": 1.0, "theta": 1.0, "phi0": 0.0, "delta": 1.0}],
        },
    }
    code, stdout, _ = run(["oracles", "--config", write_doc(tmp_path, document)], capsys)
    case = json.loads(stdout)["lemma3"][0]
    assert code in (0, 2)
    assert case["pass"] is True
    assert isinstance(case["discrete_objective"], float)
    assert "objective_relative_error" in case


def test_unserializable_report_is_internal_error(tmp_path, capsys, monkeypatch):
    out = tmp_path / "report.json"
    monkeypatch.setitem(cli.COMMANDS, "value", lambda rc, trace: ({"pass": True, "bad": object()}, []))
    code, stdout, stderr = run(["value", "--config", write_doc(tmp_path, VALUE_DOC), "--out", str(out)], capsys)
    assert code == 3
    assert stdout == ""
    assert not out.exists()
    assert "Internal error" in stderr


def test_perturbations_share_the_run(tmp_path, capsys):
    document = zero_policy_doc(tmp_path)
    document["simulation"].update({"policy": "optimal", "n_paths": 400, "perturbations": True})
    code, stdout, _ = run(["montecarlo", "--config", write_doc(tmp_path, document)], capsys)
    report = json.loads(stdout)
    assert code in (0, 2)
    optimal = report["perturbations"][0]
    assert optimal["label"] == "optimal"
    assert optimal["report"]["estimate"] == report["estimate"]
    assert optimal["report"]["std_error"] == report["std_error"]
    assert optimal["mean_difference"] == 0.0

    params = ModelParams(mu=1.5, s0=1.0, delta=1.0, horizon=1.0)
    expected = perturbation_study(params, TimeGrid.for_horizon(1.0, 50), 400, seed=1)
    assert [p["label"] for p in report["perturbations"]] == [o.label for o in expected]
    assert [p["mean_difference"] for p in report["perturbations"]] == [o.mean_difference for o in expected]


def test_perturbations_alongside_zero_policy(tmp_path, capsys):
    document = zero_policy_doc(tmp_path)
    document["simulation"].update({"n_paths": 400, "perturbations": True})
    code, stdout, _ = run(["montecarlo", "--config", write_doc(tmp_path, document)], capsys)
    report = json.loads(stdout)
    assert code in (0, 2)
    assert report["estimate"] == -1.0
    assert report["perturbations"][0]["label"] == "optimal"
    assert report["perturbations"][0]["report"]["estimate"] != -1.0
