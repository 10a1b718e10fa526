"""
Frictionless-limit check.

As delta grows the optimal position tracks (1 + T - t)(mu - S_t), the
holding without impact. The deviation is measured away from both ends,
where the boundary layers of the feedback live, and normalized by the
largest target holding over the whole path.
"""

from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np
import structlog

from ..analytics.feedback import frictionless_target
from ..analytics.params import ModelParams
from ..datafeed.price_paths import TimeGrid, sample_ou_path
from ..execution.wealth import integrate_strategy
from ..strategy.policies import OptimalFeedbackPolicy
from ..utils.errors import DomainError

logger = structlog.get_logger(__name__)

MIN_DELTA = 1e3
WINDOW = (0.1, 0.9)


@dataclass(frozen=True)
class FrictionlessReport:
    delta: float
    deviation: float
    target_sup: float

    @property
    def ratio(self) -> float:
        return self.deviation / self.target_sup if self.target_sup > 0 else 0.0

    def to_dict(self) -> Dict:
        return {**asdict(self), "ratio": self.ratio}


def frictionless_limit_report(
    params: ModelParams,
    grid: TimeGrid,
    seed: int,
    noise_scale: float = 1.0,
    path_index: int = 0,
) -> FrictionlessReport:
    """Simulate one path under the optimal policy; noise_scale = 0 gives the mean path"""
    if params.delta < MIN_DELTA:
        raise DomainError(f"frictionless check needs delta >= {MIN_DELTA:g}, got {params.delta}")

    path = sample_ou_path(params, grid, seed, path_index, noise_scale)
    trace = integrate_strategy(params, path, OptimalFeedbackPolicy(params))

    times = grid.times()
    lo, hi = WINDOW[0] * params.horizon, WINDOW[1] * params.horizon
    window = (times >= lo) & (times <= hi)
    target = np.array([frictionless_target(params, t, s) for t, s in zip(times, path.prices)])

    deviation = float(np.max(np.abs(trace.positions[window] - target[window]))) if window.any() else 0.0
    target_sup = float(np.max(np.abs(target)))
    report = FrictionlessReport(delta=params.delta, deviation=deviation, target_sup=target_sup)
    logger.info("frictionless_limit", delta=params.delta, noise_scale=noise_scale,
                deviation=deviation, target_sup=target_sup, ratio=report.ratio)
    return report


def frictionless_limit_check(params: ModelParams, grid: TimeGrid, seed: int) -> float:
    return frictionless_limit_report(params, grid, seed).deviation
