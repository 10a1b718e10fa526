"""
Optimal Feedback Strategy

The optimal trading rate at time t, price S and position Phi is

    phi = delta * (kappa(tau) * (mu - S) - Phi) / denom(tau),   tau = T - t

i.e. mean reversion of the position towards the target kappa(tau)(mu - S)
at a speed that vanishes at maturity.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..utils.errors import DomainError
from . import hyperbolic
from .params import ModelParams, require_finite

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class FeedbackCoefficients:
    """Target coefficient and speed denominator at time-to-maturity tau"""
    tau: float
    kappa: float
    denom: float


def feedback_coefficients(delta: float, tau: float) -> FeedbackCoefficients:
    delta = require_finite("delta", delta)
    tau = require_finite("tau", tau)
    if delta <= 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if tau <= 0:
        raise DomainError(f"tau must be > 0, got {tau}")

    a = math.sqrt(1.0 + delta)
    y = a * tau
    half_tanh = math.tanh(0.5 * y)
    drift = delta * tau / (1.0 + delta)

    kappa = 1.0 + (1.0 - delta) / a ** 3 * half_tanh + drift
    denom = 1.0 + drift + a * hyperbolic.csch(y) + (1.0 + delta * delta) / a ** 3 * half_tanh
    return FeedbackCoefficients(tau=tau, kappa=kappa, denom=denom)


def _time_to_maturity(params: ModelParams, t: float) -> float:
    t = require_finite("t", t)
    if t < 0 or t > params.horizon:
        raise DomainError(f"t must lie in [0, {params.horizon}], got {t}")
    return params.horizon - t


def feedback_rate(params: ModelParams, t: float, price: ArrayLike, position: ArrayLike) -> ArrayLike:
    """Optimal rate; price and position may be arrays of equal shape"""
    tau = _time_to_maturity(params, t)
    if tau == 0.0:
        if np.ndim(price) or np.ndim(position):
            return np.zeros(np.broadcast(price, position).shape)
        return 0.0
    coeffs = feedback_coefficients(params.delta, tau)
    return params.delta * (coeffs.kappa * (params.mu - price) - position) / coeffs.denom


def target_position(params: ModelParams, t: float, price: ArrayLike) -> ArrayLike:
    """Position the optimal strategy reverts to: kappa(T-t)(mu - S)"""
    tau = _time_to_maturity(params, t)
    kappa = 1.0 if tau == 0.0 else feedback_coefficients(params.delta, tau).kappa
    return kappa * (params.mu - price)


def frictionless_target(params: ModelParams, t: float, price: ArrayLike) -> ArrayLike:
    """Optimal holding without impact: (1 + T - t)(mu - S)"""
    tau = _time_to_maturity(params, t)
    return (1.0 + tau) * (params.mu - price)
