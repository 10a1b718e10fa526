"""
Strategy Integration Under Temporary Impact

Trading at rate phi executes at S + phi/(2 delta). The position follows
explicit Euler on the price grid and terminal wealth is accumulated both
as a Riemann sum and as a discrete stochastic integral.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import structlog

from ..analytics.params import ModelParams
from ..datafeed.price_paths import PathSample, TimeGrid
from ..strategy.policies import Policy
from ..utils.errors import DomainError, IntegrationError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class StrategyTrace:
    rates: np.ndarray
    positions: np.ndarray
    wealth_riemann: float
    wealth_ito: float


class BatchTrace(NamedTuple):
    """Row-per-path version of StrategyTrace"""
    rates: np.ndarray
    positions: np.ndarray
    wealth_riemann: np.ndarray
    wealth_ito: np.ndarray


def integrate_batch(params: ModelParams, grid: TimeGrid, prices: np.ndarray, policy: Policy) -> BatchTrace:
    """Integrate one policy over a (n_paths, n_steps + 1) block of prices"""
    prices = np.atleast_2d(prices)
    n_paths, n_nodes = prices.shape
    if n_nodes != grid.n_steps + 1:
        raise DomainError(f"prices have {n_nodes} nodes, grid has {grid.n_steps + 1}")

    h = grid.step
    times = grid.times()
    rates = np.empty((n_paths, n_nodes))
    positions = np.empty((n_paths, n_nodes))
    positions[:, 0] = params.phi0

    for k in range(n_nodes):
        rate = np.broadcast_to(policy(times[k], prices[:, k], positions[:, k]), (n_paths,))
        if not np.all(np.isfinite(rate)):
            logger.error("non_finite_rate", step=k, t=float(times[k]), policy=policy.label)
            raise IntegrationError(f"policy {policy.label!r} returned a non-finite rate at step {k}", step=k)
        rates[:, k] = rate
        if k + 1 < n_nodes:
            positions[:, k + 1] = positions[:, k] + rate * h

    traded = rates[:, :-1]
    impact_cost = np.sum(traded * traded, axis=1) * h / (2.0 * params.delta)
    terminal = prices[:, -1:]
    wealth_riemann = (params.phi0 * (prices[:, -1] - prices[:, 0])
                      + np.sum(traded * (terminal - prices[:, :-1]), axis=1) * h
                      - impact_cost)
    wealth_ito = np.sum(positions[:, :-1] * np.diff(prices, axis=1), axis=1) - impact_cost
    return BatchTrace(rates, positions, wealth_riemann, wealth_ito)


def integrate_strategy(params: ModelParams, path: PathSample, policy: Policy) -> StrategyTrace:
    batch = integrate_batch(params, path.grid, path.prices, policy)
    return StrategyTrace(
        rates=batch.rates[0],
        positions=batch.positions[0],
        wealth_riemann=float(batch.wealth_riemann[0]),
        wealth_ito=float(batch.wealth_ito[0]),
    )
