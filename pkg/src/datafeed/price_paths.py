"""
Ornstein-Uhlenbeck Price Feed

Exact-transition sampling of dS = (mu - S) dt + dW on a uniform grid.
Each path draws its shocks from its own counter-based stream keyed by
(seed, path_index), so any path can be regenerated in isolation and the
batch layout never changes the numbers.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from numba import njit

from ..analytics.params import ModelParams
from ..utils.errors import DomainError

_UINT64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t0 < ... < t1 with n_steps intervals"""
    t0: float
    t1: float
    n_steps: int

    def __post_init__(self):
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise DomainError(f"n_steps must be an integer >= 1, got {self.n_steps}")
        object.__setattr__(self, "n_steps", int(self.n_steps))
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)) or not self.t1 > self.t0:
            raise DomainError(f"grid needs finite t0 < t1, got [{self.t0}, {self.t1}]")

    @classmethod
    def for_horizon(cls, horizon: float, n_steps: int) -> "TimeGrid":
        return cls(0.0, float(horizon), n_steps)

    @property
    def step(self) -> float:
        return (self.t1 - self.t0) / self.n_steps

    def node(self, k: int) -> float:
        if k == self.n_steps:
            return self.t1
        return self.t0 + k * self.step

    def times(self) -> np.ndarray:
        times = self.t0 + np.arange(self.n_steps + 1) * self.step
        times[-1] = self.t1
        return times


@dataclass(frozen=True)
class PathSample:
    """Prices at every node and the standard normal shocks that produced them"""
    grid: TimeGrid
    prices: np.ndarray
    shocks: np.ndarray
    path_index: int = 0


def _check_seed(seed: int) -> int:
    if int(seed) != seed or not 0 <= seed <= _UINT64_MAX:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return int(seed)


def _check_grid(params: ModelParams, grid: TimeGrid) -> None:
    if grid.t0 != 0.0 or not math.isclose(grid.t1, params.horizon, rel_tol=1e-12, abs_tol=0.0):
        raise DomainError(
            f"grid [{grid.t0}, {grid.t1}] does not span the horizon [0, {params.horizon}]"
        )


def shock_stream(seed: int, path_index: int) -> np.random.Generator:
    """Philox generator keyed by (seed, path_index); draw k is shock k"""
    key = np.array([_check_seed(seed), _check_seed(path_index)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@njit(nogil=True)
def _ou_recursion(s0, mu, decay, scale, shocks, prices):
    n_paths, n_steps = shocks.shape
    for i in range(n_paths):
        s = s0
        prices[i, 0] = s
        for k in range(n_steps):
            s = mu + (s - mu) * decay + scale * shocks[i, k]
            prices[i, k + 1] = s


def sample_ou_paths(
    params: ModelParams,
    grid: TimeGrid,
    seed: int,
    path_indices: Sequence[int],
    noise_scale: float = 1.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batch sampler. Row i of (prices, shocks) is bit-identical to
    sample_ou_path(params, grid, seed, path_indices[i]). noise_scale = 0
    gives the deterministic mean path.
    """
    _check_grid(params, grid)
    _check_seed(seed)
    indices = list(path_indices)
    shocks = np.empty((len(indices), grid.n_steps))
    for row, path_index in enumerate(indices):
        shocks[row] = shock_stream(seed, path_index).standard_normal(grid.n_steps)
    if noise_scale != 1.0:
        shocks *= noise_scale

    h = grid.step
    decay = math.exp(-h)
    scale = math.sqrt(-math.expm1(-2.0 * h) / 2.0)
    prices = np.empty((len(indices), grid.n_steps + 1))
    _ou_recursion(params.s0, params.mu, decay, scale, shocks, prices)
    return prices, shocks


def sample_ou_path(
    params: ModelParams,
    grid: TimeGrid,
    seed: int,
    path_index: int,
    noise_scale: float = 1.0,
) -> PathSample:
    prices, shocks = sample_ou_paths(params, grid, seed, [path_index], noise_scale)
    return PathSample(grid=grid, prices=prices[0], shocks=shocks[0], path_index=int(path_index))
