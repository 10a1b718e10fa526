"""
Adaptive Simpson Quadrature

Recursive bisection with a local error estimate and Richardson correction.
The tolerance is absolute and halves with each level.
"""

import math
from typing import Callable, Optional, Tuple

import structlog

from .config import config
from .errors import DomainError, QuadratureError

logger = structlog.get_logger(__name__)


def _simpson(fa: float, fm: float, fb: float, half_width: float) -> float:
    return half_width / 3.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Optional[float] = None,
    max_depth: Optional[int] = None,
) -> Tuple[float, float]:
    """
    Integrate f over [a, b] to absolute tolerance tol.

    Returns (estimate, error_estimate). Raises QuadratureError carrying the
    best estimate if any panel still misses its tolerance at max_depth.
    """
    tol = config.numerics.quadrature_tolerance if tol is None else tol
    max_depth = config.numerics.quadrature_max_depth if max_depth is None else max_depth

    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"integration bounds must be finite, got [{a}, {b}]")
    if not tol > 0:
        raise DomainError(f"tolerance must be > 0, got {tol}")
    if a == b:
        return 0.0, 0.0
    if a > b:
        estimate, error = adaptive_simpson(f, b, a, tol, max_depth)
        return -estimate, error

    unconverged = [0]
    deepest = [0]

    def _adaptive(lo, hi, f_lo, f_mid, f_hi, whole, depth, local_tol):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        f_left = f(0.5 * (lo + mid))
        f_right = f(0.5 * (mid + hi))

        left = _simpson(f_lo, f_left, f_mid, 0.5 * half)
        right = _simpson(f_mid, f_right, f_hi, 0.5 * half)
        delta = (left + right - whole) / 15.0

        if abs(delta) <= local_tol:
            deepest[0] = max(deepest[0], depth)
            return left + right + delta, abs(delta)
        if depth >= max_depth:
            unconverged[0] += 1
            return left + right + delta, abs(delta)

        left_est, left_err = _adaptive(lo, mid, f_lo, f_left, f_mid, left, depth + 1, 0.5 * local_tol)
        right_est, right_err = _adaptive(mid, hi, f_mid, f_right, f_hi, right, depth + 1, 0.5 * local_tol)
        return left_est + right_est, left_err + right_err

    f_a, f_m, f_b = f(a), f(0.5 * (a + b)), f(b)
    whole = _simpson(f_a, f_m, f_b, 0.5 * (b - a))
    estimate, error = _adaptive(a, b, f_a, f_m, f_b, whole, 1, tol)

    if unconverged[0] or not math.isfinite(estimate):
        logger.warning(
            "quadrature_not_converged",
            lower=a,
            upper=b,
            estimate=estimate,
            error_estimate=error,
            unconverged_panels=unconverged[0],
        )
        raise QuadratureError(
            f"adaptive Simpson did not reach tol={tol} on [{a}, {b}] within depth {max_depth}",
            estimate=estimate,
            error_estimate=error,
        )

    logger.debug("quadrature_done", lower=a, upper=b, depth=deepest[0], error_estimate=error)
    return estimate, error
