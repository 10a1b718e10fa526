"""
Monte Carlo Engine

Paths are split into fixed chunks of consecutive path indices and handed to
a worker pool. Every chunk regenerates its own paths from (seed, path_index)
and writes into a slot of a preallocated array indexed by path, so the
reduction sees the same numbers in the same order for any worker count.
"""

import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog

from ..analytics.params import ModelParams
from ..datafeed.price_paths import TimeGrid, sample_ou_paths
from ..execution.wealth import integrate_batch
from ..strategy.policies import OptimalFeedbackPolicy, Policy, PolicyTransform, default_perturbations
from ..utils.config import config
from ..utils.errors import DomainError, MonteCarloError
from ..utils.run_config import digest_document

logger = structlog.get_logger(__name__)

# exp(700) is close to the largest finite double
_MIN_WEALTH = -700.0


@dataclass(frozen=True)
class MonteCarloReport:
    n_paths: int
    estimate: float
    std_error: float
    seed: int
    config_digest: str

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class PerturbationOutcome:
    label: str
    report: MonteCarloReport
    mean_difference: float
    paired_std_error: float

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "report": self.report.to_dict(),
            "mean_difference": self.mean_difference,
            "paired_std_error": self.paired_std_error,
        }


class RunMonitor:
    """Chunk throughput counters for one engine run"""

    def __init__(self):
        self.paths = 0
        self.chunks = 0
        self.chunk_seconds: List[float] = []
        self.started = time.perf_counter()
        self.lock = threading.Lock()

    def record_chunk(self, n_paths: int, seconds: float):
        with self.lock:
            self.paths += n_paths
            self.chunks += 1
            self.chunk_seconds.append(seconds)

    def get_stats(self) -> Dict:
        with self.lock:
            elapsed = time.perf_counter() - self.started
            stats = {
                "paths": self.paths,
                "chunks": self.chunks,
                "elapsed_seconds": elapsed,
                "paths_per_second": self.paths / elapsed if elapsed > 0 else 0.0,
            }
            if self.chunk_seconds:
                stats["avg_chunk_seconds"] = float(np.mean(self.chunk_seconds))
                stats["max_chunk_seconds"] = float(np.max(self.chunk_seconds))
            return stats


class MonteCarloEngine:
    """
    Evaluates several policies on common random numbers.

    Results depend only on (params, grid, seed, n_paths, noise_scale), never
    on workers or chunk_size.
    """

    def __init__(
        self,
        params: ModelParams,
        grid: TimeGrid,
        seed: int,
        workers: Optional[int] = None,
        chunk_size: Optional[int] = None,
        noise_scale: float = 1.0,
    ):
        settings = config.simulation
        self.params = params
        self.grid = grid
        self.seed = seed
        self.workers = workers or settings.worker_threads
        self.chunk_size = chunk_size or settings.chunk_size
        self.noise_scale = noise_scale
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if self.chunk_size < 1:
            raise DomainError(f"chunk_size must be >= 1, got {self.chunk_size}")

    def _run_chunk(self, policies: Sequence[Policy], start: int, stop: int,
                   wealth: np.ndarray, monitor: RunMonitor):
        began = time.perf_counter()
        prices, _ = sample_ou_paths(self.params, self.grid, self.seed, range(start, stop), self.noise_scale)
        for row, policy in enumerate(policies):
            wealth[row, start:stop] = integrate_batch(self.params, self.grid, prices, policy).wealth_ito
        monitor.record_chunk(stop - start, time.perf_counter() - began)

    def evaluate(self, policies: Sequence[Policy], n_paths: int) -> np.ndarray:
        """Terminal wealth (stochastic-integral form), one row per policy"""
        if int(n_paths) != n_paths or n_paths < 1:
            raise DomainError(f"n_paths must be a positive integer, got {n_paths}")
        n_paths = int(n_paths)
        wealth = np.empty((len(policies), n_paths))
        monitor = RunMonitor()
        bounds = [(start, min(start + self.chunk_size, n_paths))
                  for start in range(0, n_paths, self.chunk_size)]

        with ThreadPoolExecutor(max_workers=self.workers) as worker_pool:
            futures = [worker_pool.submit(self._run_chunk, policies, start, stop, wealth, monitor)
                       for start, stop in bounds]
            for future in futures:
                future.result()

        stats = monitor.get_stats()
        logger.info(
            "monte_carlo_run",
            policies=[p.label for p in policies],
            n_paths=n_paths,
            workers=self.workers,
            chunks=stats["chunks"],
            elapsed_seconds=round(stats["elapsed_seconds"], 3),
            paths_per_second=round(stats["paths_per_second"], 1),
        )
        return wealth


def utilities(wealth: np.ndarray) -> np.ndarray:
    """-exp(-wealth); aborts if any path would overflow the exponential"""
    wealth = np.asarray(wealth)
    flagged = np.flatnonzero(wealth < _MIN_WEALTH)
    if flagged.size:
        path_index = int(flagged[0] % wealth.shape[-1])
        logger.error("wealth_overflow", path_index=path_index, wealth=float(wealth.flat[flagged[0]]))
        raise MonteCarloError(f"terminal wealth below {_MIN_WEALTH} on path {path_index}", path_index=path_index)
    return -np.exp(-wealth)


def _std_error(samples: np.ndarray) -> float:
    return float(np.std(samples, ddof=1) / math.sqrt(samples.size))


def summarize(utility: np.ndarray, seed: int, config_digest: str) -> MonteCarloReport:
    return MonteCarloReport(
        n_paths=int(utility.size),
        estimate=float(np.mean(utility)),
        std_error=_std_error(utility),
        seed=int(seed),
        config_digest=config_digest,
    )


def run_digest(params: ModelParams, grid: TimeGrid, n_paths: int, seed: int, labels: Sequence[str]) -> str:
    return digest_document({
        "model": params.to_dict(),
        "grid": {"t0": grid.t0, "t1": grid.t1, "n_steps": grid.n_steps},
        "n_paths": int(n_paths),
        "seed": int(seed),
        "policies": list(labels),
    })


def _check_paths(n_paths: int) -> None:
    if int(n_paths) != n_paths or n_paths < 2:
        raise DomainError(f"n_paths must be an integer >= 2, got {n_paths}")


def monte_carlo_value(
    params: ModelParams,
    grid: TimeGrid,
    n_paths: int,
    seed: int,
    policy: Optional[Policy] = None,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
    config_digest: Optional[str] = None,
) -> MonteCarloReport:
    """Mean and standard error of -exp(-wealth) over n_paths paths"""
    _check_paths(n_paths)
    policy = policy or OptimalFeedbackPolicy(params)
    engine = MonteCarloEngine(params, grid, seed, workers, chunk_size)
    wealth = engine.evaluate([policy], n_paths)[0]
    digest = config_digest or run_digest(params, grid, n_paths, seed, [policy.label])
    return summarize(utilities(wealth), seed, digest)


def perturbation_study(
    params: ModelParams,
    grid: TimeGrid,
    n_paths: int,
    seed: int,
    perturbations: Optional[Sequence[PolicyTransform]] = None,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
    config_digest: Optional[str] = None,
) -> List[PerturbationOutcome]:
    """
    Evaluate the optimal policy and each perturbation of it on the same
    paths. The first outcome is the optimal policy itself; differences are
    perturbed minus optimal, path by path.
    """
    _check_paths(n_paths)
    policies = perturbation_policies(params, perturbations)
    labels = [p.label for p in policies]
    digest = config_digest or run_digest(params, grid, n_paths, seed, labels)

    engine = MonteCarloEngine(params, grid, seed, workers, chunk_size)
    return paired_outcomes(labels, utilities(engine.evaluate(policies, n_paths)), seed, digest)


def perturbation_policies(
    params: ModelParams, perturbations: Optional[Sequence[PolicyTransform]] = None
) -> List[Policy]:
    """The optimal policy followed by each perturbation of it"""
    if perturbations is None:
        perturbations = default_perturbations(params)
    if not perturbations:
        raise DomainError("perturbation study needs at least one transform")
    optimal = OptimalFeedbackPolicy(params)
    return [optimal] + [transform(optimal) for transform in perturbations]


def paired_outcomes(
    labels: Sequence[str], utility: np.ndarray, seed: int, config_digest: str
) -> List[PerturbationOutcome]:
    """Summaries of each utility row, paired against row 0 path by path"""
    outcomes = []
    for label, row in zip(labels, utility):
        difference = row - utility[0]
        outcomes.append(PerturbationOutcome(
            label=label,
            report=summarize(row, seed, config_digest),
            mean_difference=float(np.mean(difference)),
            paired_std_error=_std_error(difference),
        ))
        logger.debug("perturbation_outcome", label=label, estimate=outcomes[-1].report.estimate,
                     mean_difference=outcomes[-1].mean_difference)
    return outcomes
