"""
Optimal Value and Certainty Equivalent

For an investor starting flat (phi0 = 0) the maximal expected utility is

    -exp(-V(T) (mu - S0)^2 / 2 - (1/2) * integral_0^T V(t) dt)
"""

import math
from typing import NamedTuple, Optional

import structlog

from ..utils.errors import UnsupportedCaseError
from .params import ModelParams
from .value_shape import ValueShape

logger = structlog.get_logger(__name__)


class CertaintyEquivalentRates(NamedTuple):
    """Long-horizon c(T)/T: the value implied by the value formula and the one quoted in prose"""
    implied_by_value_formula: float
    stated_in_prose: float


def require_flat_start(params: ModelParams) -> None:
    if params.phi0 != 0.0:
        raise UnsupportedCaseError(
            f"closed-form value is available only for phi0 = 0, got {params.phi0}"
        )


def certainty_equivalent(params: ModelParams, tol: Optional[float] = None) -> float:
    """log(-value) = -(V(T) theta^2 / 2 + integral / 2)"""
    require_flat_start(params)
    shape = ValueShape(params.delta)
    exponent = 0.5 * shape(params.horizon) * params.theta ** 2 + 0.5 * shape.integral(params.horizon, tol)
    return -exponent


def analytic_value(params: ModelParams, tol: Optional[float] = None) -> float:
    value = -math.exp(certainty_equivalent(params, tol))
    logger.debug("analytic_value", delta=params.delta, horizon=params.horizon,
                 theta=params.theta, value=value)
    return value


def certainty_equivalent_rates(delta: float) -> CertaintyEquivalentRates:
    root = ValueShape(delta).root
    return CertaintyEquivalentRates(
        implied_by_value_formula=-0.5 * (root - 1.0),
        stated_in_prose=1.0 - root,
    )
