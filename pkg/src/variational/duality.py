"""
Deterministic dual value.

The dual side splits into a part driven by the initial distance to the
mean, worth the terminal-coupled minimum with theta = mu - S0, and a part
contributing l_part_value(T - s) at every s. Together with -T/2 it must
reproduce -log(-analytic_value).
"""

from typing import Optional

import structlog

from ..analytics.params import ModelParams
from ..analytics.value import require_flat_start
from ..utils.quadrature import adaptive_simpson
from .problems import TerminalCoupledProblem
from .terminal import l_part_value, lemma3_min_value

logger = structlog.get_logger(__name__)


def dual_value(params: ModelParams, tol: Optional[float] = None) -> float:
    require_flat_start(params)
    horizon = params.horizon

    a_part = lemma3_min_value(TerminalCoupledProblem(
        s=0.0, T=horizon, theta=params.theta, phi0=0.0, delta=params.delta,
    ))
    l_part, error = adaptive_simpson(
        lambda s: l_part_value(params.delta, horizon - s), 0.0, horizon, tol=tol,
    )

    value = -0.5 * horizon + a_part + l_part
    logger.debug("dual_value", a_part=a_part, l_part=l_part, error_estimate=error, value=value)
    return value
