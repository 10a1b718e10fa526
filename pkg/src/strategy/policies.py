"""
Trading Policies

A policy maps (t, prices, positions) to trading rates, vectorized over
paths. Transforms wrap a policy into a perturbed one for optimality checks.
"""

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence, Union

import numpy as np

from ..analytics.feedback import feedback_rate
from ..analytics.params import ModelParams

ArrayLike = Union[float, np.ndarray]


class Policy(Protocol):
    label: str

    def __call__(self, t: float, price: ArrayLike, position: ArrayLike) -> ArrayLike:
        ...


PolicyTransform = Callable[[Policy], Policy]


@dataclass(frozen=True)
class OptimalFeedbackPolicy:
    params: ModelParams
    label: str = "optimal"

    def __call__(self, t, price, position):
        return feedback_rate(self.params, t, price, position)


@dataclass(frozen=True)
class ZeroPolicy:
    label: str = "zero"

    def __call__(self, t, price, position):
        return np.zeros(np.broadcast(price, position).shape)


@dataclass(frozen=True)
class ConstantPolicy:
    rate: float
    label: str = "constant"

    def __call__(self, t, price, position):
        return np.full(np.broadcast(price, position).shape, float(self.rate))


@dataclass(frozen=True)
class ScaledPolicy:
    base: Policy
    factor: float

    @property
    def label(self) -> str:
        return f"scale_x{self.factor:g}"

    def __call__(self, t, price, position):
        return self.factor * self.base(t, price, position)


@dataclass(frozen=True)
class TimeLaggedPolicy:
    """Base policy read off a clock running `lag` behind (clamped at 0)"""
    base: Policy
    lag: float

    @property
    def label(self) -> str:
        return f"lag_{self.lag:g}"

    def __call__(self, t, price, position):
        return self.base(max(t - self.lag, 0.0), price, position)


@dataclass(frozen=True)
class FrozenPolicy:
    """Trades forever at the rate the base policy chose at the first node"""
    base: Policy
    rate: float

    @property
    def label(self) -> str:
        return "frozen"

    def __call__(self, t, price, position):
        return np.full(np.broadcast(price, position).shape, self.rate)


def scaled(factor: float) -> PolicyTransform:
    return lambda base: ScaledPolicy(base, float(factor))


def time_lagged(lag: float) -> PolicyTransform:
    return lambda base: TimeLaggedPolicy(base, float(lag))


def frozen_at_start(params: ModelParams) -> PolicyTransform:
    def _freeze(base: Policy) -> Policy:
        rate = float(np.asarray(base(0.0, params.s0, params.phi0)))
        return FrozenPolicy(base, rate)
    return _freeze


def default_perturbations(params: ModelParams) -> Sequence[PolicyTransform]:
    return [
        scaled(0.5),
        scaled(1.0),
        scaled(1.5),
        time_lagged(0.05 * params.horizon),
        frozen_at_start(params),
    ]


def build_policy(name: str, params: ModelParams) -> Policy:
    if name == "optimal":
        return OptimalFeedbackPolicy(params)
    if name == "zero":
        return ZeroPolicy()
    raise ValueError(f"Unknown policy: {name}. Must be 'optimal' or 'zero'")
