"""
Configuration Manager

Library-wide defaults loaded from YAML with environment variable overrides,
validation, and typed access through dataclass sections.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict

import structlog
import yaml

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class NumericsConfig:
    """Quadrature and solver tolerances"""
    quadrature_tolerance: float = 1e-10
    quadrature_max_depth: int = 40
    cg_tolerance: float = 1e-12
    cg_max_iter_factor: int = 10


@dataclass(frozen=True)
class SimulationConfig:
    """Monte Carlo engine settings"""
    worker_threads: int = 4
    chunk_size: int = 2048
    default_seed: int = 20240611


@dataclass(frozen=True)
class OracleConfig:
    """Discrete oracle defaults"""
    default_n: int = 4000
    convergence_start_n: int = 500


@dataclass(frozen=True)
class AcceptanceConfig:
    """Pass/fail thresholds used by the command reports"""
    duality_gap: float = 1e-8
    lemma2_relative: float = 1e-5
    lemma2_node: float = 1e-4
    convergence_ratio: float = 0.3
    lemma3_relative: float = 1e-3
    mc_se_multiplier: float = 3.0
    mc_discretization_allowance: float = 2e-3
    frictionless_fraction: float = 0.05


@dataclass(frozen=True)
class LoggingConfig:
    """Logging configuration"""
    level: str = "INFO"
    renderer: str = "console"
    log_to_file: bool = False
    log_file: str = "logs/ou_impact.log"
    max_log_size: int = 10000000
    backup_count: int = 3


class ConfigManager:
    """
    Configuration manager with environment overrides and validation
    """

    _instance = None
    _config = None

    def __new__(cls):
        """Singleton pattern for global configuration access"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._config is None:
            self._config = {}
            self._load_config()

    def _load_config(self):
        """Load configuration from YAML file and environment variables"""
        config_path = self._get_config_path()

        if config_path.exists():
            with open(config_path, 'r') as f:
                yaml_config = yaml.safe_load(f) or {}
        else:
            logger.warning("config_file_missing", path=str(config_path))
            yaml_config = {}

        self._config = self._merge_env_vars(yaml_config)
        self._validate_config()

        logger.debug("config_loaded", path=str(config_path))

    def _get_config_path(self) -> Path:
        """Get configuration file path"""
        config_path = os.getenv('OUIMPACT_CONFIG_PATH')
        if config_path:
            return Path(config_path)

        repo_dir = Path(__file__).parent.parent.parent
        possible_paths = [
            repo_dir / "config" / "config.yaml",
            repo_dir / "config.yaml",
            Path.home() / ".ou-impact" / "config.yaml",
        ]

        for path in possible_paths:
            if path.exists():
                return path

        return repo_dir / "config" / "config.yaml"

    def _merge_env_vars(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Override YAML values with environment variables"""
        env_mappings = {
            'OUIMPACT_LOG_LEVEL': (['logging', 'level'], str),
            'OUIMPACT_LOG_FORMAT': (['logging', 'renderer'], str),
            'OUIMPACT_WORKER_THREADS': (['simulation', 'worker_threads'], int),
            'OUIMPACT_CHUNK_SIZE': (['simulation', 'chunk_size'], int),
        }

        for env_var, (config_path, cast) in env_mappings.items():
            value = os.getenv(env_var)
            if value:
                current = config
                for key in config_path[:-1]:
                    current = current.setdefault(key, {})
                try:
                    current[config_path[-1]] = cast(value)
                except ValueError:
                    raise ValueError(f"{env_var} must be {cast.__name__}, got {value!r}")
                logger.debug("config_env_override", variable=env_var)

        return config

    def _validate_config(self):
        """Validate numeric ranges"""
        simulation = self._config.get('simulation', {})
        if simulation.get('worker_threads', 4) < 1:
            raise ValueError("worker_threads must be >= 1")
        if simulation.get('chunk_size', 2048) < 1:
            raise ValueError("chunk_size must be >= 1")

        numerics = self._config.get('numerics', {})
        for key in ('quadrature_tolerance', 'cg_tolerance'):
            if numerics.get(key, 1.0) <= 0:
                raise ValueError(f"{key} must be > 0")
        if numerics.get('quadrature_max_depth', 40) < 1:
            raise ValueError("quadrature_max_depth must be >= 1")

        renderer = self._config.get('logging', {}).get('renderer', 'console')
        if renderer not in ('console', 'json'):
            raise ValueError(f"Invalid log renderer: {renderer}. Must be 'console' or 'json'")

    @property
    def numerics(self) -> NumericsConfig:
        """Get numerical settings"""
        data = self._config.get('numerics', {})
        return NumericsConfig(
            quadrature_tolerance=float(data.get('quadrature_tolerance', 1e-10)),
            quadrature_max_depth=int(data.get('quadrature_max_depth', 40)),
            cg_tolerance=float(data.get('cg_tolerance', 1e-12)),
            cg_max_iter_factor=int(data.get('cg_max_iter_factor', 10)),
        )

    @property
    def simulation(self) -> SimulationConfig:
        """Get Monte Carlo engine settings"""
        data = self._config.get('simulation', {})
        return SimulationConfig(
            worker_threads=int(data.get('worker_threads', 4)),
            chunk_size=int(data.get('chunk_size', 2048)),
            default_seed=int(data.get('default_seed', 20240611)),
        )

    @property
    def oracles(self) -> OracleConfig:
        """Get oracle defaults"""
        data = self._config.get('oracles', {})
        return OracleConfig(
            default_n=int(data.get('default_n', 4000)),
            convergence_start_n=int(data.get('convergence_start_n', 500)),
        )

    @property
    def acceptance(self) -> AcceptanceConfig:
        """Get acceptance thresholds"""
        data = self._config.get('acceptance', {})
        defaults = AcceptanceConfig()
        return AcceptanceConfig(**{
            name: float(data.get(name, getattr(defaults, name)))
            for name in defaults.__dataclass_fields__
        })

    @property
    def logging(self) -> LoggingConfig:
        """Get logging configuration"""
        data = self._config.get('logging', {})
        return LoggingConfig(
            level=str(data.get('level', 'INFO')).upper(),
            renderer=data.get('renderer', 'console'),
            log_to_file=bool(data.get('log_to_file', False)),
            log_file=data.get('log_file', 'logs/ou_impact.log'),
            max_log_size=int(data.get('max_log_size', 10000000)),
            backup_count=int(data.get('backup_count', 3)),
        )

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted key"""
        value = self._config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def reload(self):
        """Reload configuration from file"""
        self._config = {}
        self._load_config()
        logger.info("config_reloaded")


# Global configuration instance
config = ConfigManager()
