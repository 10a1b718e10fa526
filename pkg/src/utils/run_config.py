"""
Run Configuration

Parses and validates the JSON run document behind every CLI command.
Validation failures name the offending field (e.g. "model.delta") and
happen before any computation starts.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .config import config
from .errors import ConfigValidationError

COMMANDS = ("value", "montecarlo", "oracles", "limits")
POLICIES = ("optimal", "zero")
_UINT64_MAX = 2 ** 64 - 1


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest_document(document: Any) -> str:
    """sha256 of the canonical form; insensitive to key order and whitespace"""
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()


def _section(document: Dict, name: str, path: str, required: bool = False) -> Dict:
    value = document.get(name)
    if value is None:
        if required:
            raise ConfigValidationError(f"{path}{name}", "is required")
        return {}
    if not isinstance(value, dict):
        raise ConfigValidationError(f"{path}{name}", "must be an object")
    return value


def _real(section: Dict, name: str, path: str, default: Optional[float] = None,
          minimum: Optional[float] = None, strict: bool = False) -> float:
    field_path = f"{path}{name}"
    if name not in section:
        if default is None:
            raise ConfigValidationError(field_path, "is required")
        return float(default)
    value = section[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValidationError(field_path, f"must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigValidationError(field_path, "must be finite")
    if minimum is not None and (value <= minimum if strict else value < minimum):
        raise ConfigValidationError(field_path, f"must be {'>' if strict else '>='} {minimum:g}, got {value:g}")
    return value


def _integer(section: Dict, name: str, path: str, default: Optional[int] = None,
             minimum: int = 0, maximum: Optional[int] = None) -> int:
    field_path = f"{path}{name}"
    if name not in section:
        if default is None:
            raise ConfigValidationError(field_path, "is required")
        return int(default)
    value = section[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValidationError(field_path, f"must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigValidationError(field_path, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigValidationError(field_path, f"must be <= {maximum}, got {value}")
    return value


def _cases(document: Dict, name: str, keys: Tuple[str, ...], path: str) -> Optional[List[Dict[str, float]]]:
    value = document.get(name)
    if value is None:
        return None
    if not isinstance(value, list):
        raise ConfigValidationError(f"{path}{name}", "must be a list")
    cases = []
    for i, case in enumerate(value):
        case_path = f"{path}{name}[{i}]."
        if not isinstance(case, dict):
            raise ConfigValidationError(case_path[:-1], "must be an object")
        cases.append({key: _real(case, key, case_path) for key in keys})
    return cases


@dataclass(frozen=True)
class ModelSection:
    mu: float
    s0: float
    delta: float
    horizon: float
    phi0: float


@dataclass(frozen=True)
class OracleSection:
    n: int
    convergence_start_n: int
    convergence_doublings: int
    lemma2_cases: Optional[List[Dict[str, float]]] = None
    lemma3_cases: Optional[List[Dict[str, float]]] = None


@dataclass(frozen=True)
class LimitsSection:
    deltas: Tuple[float, float] = (1e3, 1e4)
    n_steps: int = 20000
    cesaro_horizon: float = 200.0
    certainty_horizon: float = 100.0


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: ModelSection
    seed: int
    tolerance: float
    n_steps: int
    n_paths: int
    policy: str
    perturbations: bool
    workers: Optional[int]
    chunk_size: Optional[int]
    paths_csv: Optional[str]
    oracles: OracleSection
    limits: LimitsSection
    document: Dict[str, Any] = field(repr=False, default_factory=dict)

    @property
    def config_digest(self) -> str:
        return digest_document(self.document)


def parse_run_config(document: Any, seed_override: Optional[int] = None) -> RunConfig:
    """Validate a decoded JSON document; --seed replaces the document's seed"""
    if not isinstance(document, dict):
        raise ConfigValidationError("$", "run document must be a JSON object")
    try:
        document = json.loads(canonical_json(document))
    except ValueError:
        raise ConfigValidationError("$", "NaN and Infinity are not allowed")

    command = document.get("command")
    if command not in COMMANDS:
        raise ConfigValidationError("command", f"must be one of {', '.join(COMMANDS)}, got {command!r}")

    if seed_override is not None:
        document["seed"] = seed_override
    seed = _integer(document, "seed", "", default=config.simulation.default_seed, maximum=_UINT64_MAX)

    model_data = _section(document, "model", "", required=True)
    model = ModelSection(
        mu=_real(model_data, "mu", "model."),
        s0=_real(model_data, "s0", "model."),
        delta=_real(model_data, "delta", "model.", minimum=0.0, strict=True),
        horizon=_real(model_data, "horizon", "model.", minimum=0.0, strict=True),
        phi0=_real(model_data, "phi0", "model.", default=0.0),
    )
    if command == "value" and model.phi0 != 0.0:
        raise ConfigValidationError("model.phi0", "the value command requires phi0 = 0")

    tolerance = _real(document, "tolerance", "", default=config.numerics.quadrature_tolerance,
                      minimum=0.0, strict=True)

    simulation = _section(document, "simulation", "")
    n_steps = _integer(simulation, "n_steps", "simulation.", default=2000, minimum=1)
    n_paths = _integer(simulation, "n_paths", "simulation.", default=20000, minimum=2)
    policy = simulation.get("policy", "optimal")
    if policy not in POLICIES:
        raise ConfigValidationError("simulation.policy", f"must be one of {', '.join(POLICIES)}, got {policy!r}")
    perturbations = simulation.get("perturbations", False)
    if not isinstance(perturbations, bool):
        raise ConfigValidationError("simulation.perturbations", "must be true or false")
    workers = _integer(simulation, "workers", "simulation.", minimum=1) if "workers" in simulation else None
    chunk_size = _integer(simulation, "chunk_size", "simulation.", minimum=1) if "chunk_size" in simulation else None
    paths_csv = simulation.get("paths_csv")
    if paths_csv is not None and not isinstance(paths_csv, str):
        raise ConfigValidationError("simulation.paths_csv", "must be a path string")

    oracle_data = _section(document, "oracles", "")
    oracle_defaults = config.oracles
    oracles = OracleSection(
        n=_integer(oracle_data, "n", "oracles.", default=oracle_defaults.default_n, minimum=2),
        convergence_start_n=_integer(oracle_data, "convergence_start_n", "oracles.",
                                     default=oracle_defaults.convergence_start_n, minimum=2),
        convergence_doublings=_integer(oracle_data, "convergence_doublings", "oracles.", default=2, minimum=1),
        lemma2_cases=_cases(oracle_data, "lemma2_cases", ("alpha", "s", "T", "x", "y"), "oracles."),
        lemma3_cases=_cases(oracle_data, "lemma3_cases", ("s", "T", "theta", "phi0", "delta"), "oracles."),
    )

    limits_data = _section(document, "limits", "")
    deltas = limits_data.get("deltas", [1e3, 1e4])
    if (not isinstance(deltas, list) or len(deltas) != 2
            or any(isinstance(d, bool) or not isinstance(d, (int, float)) for d in deltas)
            or not 1e3 <= deltas[0] < deltas[1]):
        raise ConfigValidationError("limits.deltas", "must be two increasing numbers, both >= 1000")
    limits = LimitsSection(
        deltas=(float(deltas[0]), float(deltas[1])),
        n_steps=_integer(limits_data, "n_steps", "limits.", default=20000, minimum=10),
        cesaro_horizon=_real(limits_data, "cesaro_horizon", "limits.", default=200.0, minimum=0.0, strict=True),
        certainty_horizon=_real(limits_data, "certainty_horizon", "limits.", default=100.0, minimum=0.0, strict=True),
    )

    return RunConfig(
        command=command,
        model=model,
        seed=seed,
        tolerance=tolerance,
        n_steps=n_steps,
        n_paths=n_paths,
        policy=policy,
        perturbations=perturbations,
        workers=workers,
        chunk_size=chunk_size,
        paths_csv=paths_csv,
        oracles=oracles,
        limits=limits,
        document=document,
    )


def load_run_config(path: Path, seed_override: Optional[int] = None) -> RunConfig:
    """Read and validate a run document; JSON syntax errors surface as validation errors"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigValidationError("$", f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise ConfigValidationError("--config", f"cannot read {path}: {e.strerror}")
    return parse_run_config(document, seed_override)
