#!/usr/bin/env python3
"""
Tests for library settings, run documents and the quadrature helper
"""

import json
import math

import pytest

from src.utils.config import ConfigManager, LoggingConfig, config
from src.utils.errors import ConfigValidationError, DomainError, QuadratureError
from src.utils.logging_setup import configure_logging
from src.utils.quadrature import adaptive_simpson
from src.utils.run_config import digest_document, load_run_config, parse_run_config


# Library settings

def test_config_defaults():
    assert config.numerics.quadrature_tolerance == 1e-10
    assert config.numerics.cg_max_iter_factor == 10
    assert config.simulation.chunk_size == 2048
    assert config.acceptance.duality_gap == 1e-8
    assert config.acceptance.lemma2_node == 1e-4
    assert config.oracles.default_n == 4000
    assert config.get("numerics.cg_tolerance") == 1e-12
    assert config.get("numerics.missing", "fallback") == "fallback"


def test_config_is_singleton():
    assert ConfigManager() is config


def test_env_override(monkeypatch):
    monkeypatch.setenv("OUIMPACT_WORKER_THREADS", "7")
    monkeypatch.setenv("OUIMPACT_LOG_LEVEL", "debug")
    config.reload()
    try:
        assert config.simulation.worker_threads == 7
        assert config.logging.level == "DEBUG"
    finally:
        monkeypatch.undo()
        config.reload()
    assert config.simulation.worker_threads == 4


def test_invalid_env_override(monkeypatch):
    monkeypatch.setenv("OUIMPACT_CHUNK_SIZE", "lots")
    with pytest.raises(ValueError):
        config.reload()
    monkeypatch.undo()
    config.reload()


def test_invalid_renderer(monkeypatch):
    monkeypatch.setenv("OUIMPACT_LOG_FORMAT", "xml")
    with pytest.raises(ValueError, match="renderer"):
        config.reload()
    monkeypatch.undo()
    config.reload()


def test_configure_logging_json(tmp_path):
    settings = LoggingConfig(level="INFO", renderer="json", log_to_file=True,
                             log_file=str(tmp_path / "logs" / "run.log"))
    configure_logging(settings, force=True)
    assert (tmp_path / "logs").is_dir()
    configure_logging(config.logging, force=True)


# Run documents

BASE = {"command": "value", "model": {"mu": 1.0, "s0": 0.0, "delta": 1.0, "horizon": 1.0}}


def test_digest_ignores_key_order_and_whitespace():
    a = {"command": "value", "model": {"mu": 1.0, "s0": 0.0}}
    b = json.loads('{ "model": {"s0": 0.0, "mu": 1.0},   "command": "value" }')
    assert digest_document(a) == digest_document(b)


def test_parse_defaults():
    rc = parse_run_config(json.loads(json.dumps(BASE)))
    assert rc.seed == config.simulation.default_seed
    assert rc.tolerance == 1e-10
    assert rc.model.phi0 == 0.0
    assert rc.policy == "optimal"
    assert rc.oracles.n == 4000
    assert rc.limits.deltas == (1e3, 1e4)


def test_seed_override_enters_digest():
    plain = parse_run_config(json.loads(json.dumps(BASE)))
    seeded = parse_run_config(json.loads(json.dumps(BASE)), seed_override=5)
    assert seeded.seed == 5
    assert seeded.config_digest != plain.config_digest
    explicit = parse_run_config({**BASE, "seed": 5})
    assert explicit.config_digest == seeded.config_digest


@pytest.mark.parametrize("patch, field", [
    ({"command": "plot"}, "command"),
    ({"model": None}, "model"),
    ({"seed": -1}, "seed"),
    ({"seed": 2 ** 64}, "seed"),
    ({"tolerance": 0}, "tolerance"),
    ({"simulation": {"n_paths": 1}}, "simulation.n_paths"),
    ({"simulation": {"policy": "twap"}}, "simulation.policy"),
    ({"simulation": {"perturbations": "yes"}}, "simulation.perturbations"),
    ({"simulation": {"workers": 0}}, "simulation.workers"),
    ({"oracles": {"n": 1}}, "oracles.n"),
    ({"limits": {"deltas": [10, 100]}}, "limits.deltas"),
])
def test_field_paths(patch, field):
    document = {**json.loads(json.dumps(BASE)), **patch}
    with pytest.raises(ConfigValidationError) as excinfo:
        parse_run_config(document)
    assert excinfo.value.field_path == field


def test_non_finite_rejected():
    document = json.loads(json.dumps(BASE))
    document["model"]["mu"] = float("nan")
    with pytest.raises(ConfigValidationError):
        parse_run_config(document)


def test_load_run_config(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(BASE), encoding="utf-8")
    assert load_run_config(path).command == "value"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigValidationError, match="malformed JSON"):
        load_run_config(path)


# Quadrature

def test_simpson_exact_on_cubics():
    estimate, error = adaptive_simpson(lambda x: x ** 3 - 2 * x + 1, 0.0, 2.0)
    assert estimate == pytest.approx(4.0 - 4.0 + 2.0, abs=1e-14)
    assert error <= 1e-14


def test_simpson_smooth_integrand():
    estimate, _ = adaptive_simpson(math.exp, 0.0, 1.0, tol=1e-12)
    assert estimate == pytest.approx(math.e - 1.0, abs=1e-12)


def test_simpson_orientation():
    forward, _ = adaptive_simpson(math.sin, 0.0, 1.0)
    backward, _ = adaptive_simpson(math.sin, 1.0, 0.0)
    assert backward == -forward
    assert adaptive_simpson(math.sin, 1.0, 1.0) == (0.0, 0.0)


def test_simpson_reports_non_convergence():
    with pytest.raises(QuadratureError) as excinfo:
        adaptive_simpson(lambda x: math.sqrt(abs(math.sin(50 * x))), 0.0, 3.0, tol=1e-14, max_depth=4)
    assert math.isfinite(excinfo.value.estimate)


def test_simpson_rejects_bad_input():
    with pytest.raises(DomainError):
        adaptive_simpson(math.sin, 0.0, math.inf)
    with pytest.raises(DomainError):
        adaptive_simpson(math.sin, 0.0, 1.0, tol=0.0)
