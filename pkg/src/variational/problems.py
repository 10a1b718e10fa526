"""
Variational Problem Instances

EndpointProblem:        minimize 1/2 int (g')^2 + alpha^2/2 int g^2 over g
                        with g(s) = x, g(T) = y.
TerminalCoupledProblem: minimize over h in L2[s, T], with F(t) = int_s^t h,
                        I = F(T),
                        (phi0 - theta) I + I^2/2 + 1/2 int h^2
                        + 1/2 int (F - theta)^2 + delta/2 int (I - F)^2.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..analytics.params import require_finite
from ..utils.errors import DomainError


def _check_interval(s: float, horizon: float) -> Tuple[float, float]:
    s = require_finite("s", s)
    horizon = require_finite("T", horizon)
    if not horizon > s:
        raise DomainError(f"T must exceed s, got s={s}, T={horizon}")
    return s, horizon


@dataclass(frozen=True)
class EndpointProblem:
    s: float
    T: float
    alpha: float
    x: float
    y: float

    def __post_init__(self):
        s, horizon = _check_interval(self.s, self.T)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "T", horizon)
        for name in ("alpha", "x", "y"):
            object.__setattr__(self, name, require_finite(name, getattr(self, name)))
        if self.alpha <= 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")

    @property
    def length(self) -> float:
        return self.T - self.s


@dataclass(frozen=True)
class TerminalCoupledProblem:
    s: float
    T: float
    theta: float
    phi0: float
    delta: float

    def __post_init__(self):
        s, horizon = _check_interval(self.s, self.T)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "T", horizon)
        for name in ("theta", "phi0", "delta"):
            object.__setattr__(self, name, require_finite(name, getattr(self, name)))
        if self.delta <= 0:
            raise DomainError(f"delta must be > 0, got {self.delta}")

    @property
    def length(self) -> float:
        return self.T - self.s

    @property
    def root(self) -> float:
        return math.sqrt(1.0 + self.delta)


@dataclass(frozen=True)
class DiscreteSolution:
    """Grid, sampled minimizer, discrete objective and integral of the minimizer"""
    grid: np.ndarray
    values: np.ndarray
    objective: float
    integral: float
    iterations: int = 0
