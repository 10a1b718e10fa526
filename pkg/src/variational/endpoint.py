"""
Fixed-endpoint quadratic problem: closed form and tridiagonal oracle.

The Euler-Lagrange equation g'' = alpha^2 g with g(s) = x, g(T) = y gives

    g(t) = [x sinh(alpha(T-t)) + y sinh(alpha(t-s))] / sinh(alpha(T-s))
"""

import math

import numpy as np
import structlog
from scipy.linalg import solveh_banded

from ..analytics import hyperbolic
from ..utils.errors import DomainError
from .problems import DiscreteSolution, EndpointProblem

logger = structlog.get_logger(__name__)


def lemma2_value(p: EndpointProblem) -> float:
    y = p.alpha * p.length
    return 0.5 * p.alpha * ((p.x - p.y) ** 2 * hyperbolic.csch(y)
                            + math.tanh(0.5 * y) * (p.x ** 2 + p.y ** 2))


def _check_time(p: EndpointProblem, t: float) -> float:
    if not (p.s <= t <= p.T):
        raise DomainError(f"t must lie in [{p.s}, {p.T}], got {t}")
    return float(t)


def lemma2_optimizer(p: EndpointProblem, t: float) -> float:
    t = _check_time(p, t)
    v = p.alpha * p.length
    return (p.x * hyperbolic.sinh_ratio(p.alpha * (p.T - t), v)
            + p.y * hyperbolic.sinh_ratio(p.alpha * (t - p.s), v))


def lemma2_optimizer_derivative(p: EndpointProblem, t: float) -> float:
    t = _check_time(p, t)
    v = p.alpha * p.length
    return p.alpha * (-p.x * hyperbolic.cosh_sinh_ratio(p.alpha * (p.T - t), v)
                      + p.y * hyperbolic.cosh_sinh_ratio(p.alpha * (t - p.s), v))


def uniform_grid(s: float, horizon: float, n: int) -> np.ndarray:
    grid = s + (horizon - s) / n * np.arange(n + 1)
    grid[-1] = horizon
    return grid


def lemma2_oracle(p: EndpointProblem, n: int) -> DiscreteSolution:
    """
    Minimize the discretized functional with forward differences for g' and
    trapezoid weights for the g^2 term. The interior nodes solve the SPD
    tridiagonal system

        (2/dt + alpha^2 dt) g_k - (g_{k-1} + g_{k+1})/dt = 0.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    dt = p.length / n
    alpha_sq = p.alpha * p.alpha

    interior = n - 1
    bands = np.empty((2, interior))
    bands[0, :] = -1.0 / dt
    bands[1, :] = 2.0 / dt + alpha_sq * dt
    rhs = np.zeros(interior)
    rhs[0] += p.x / dt
    rhs[-1] += p.y / dt

    values = np.empty(n + 1)
    values[0], values[-1] = p.x, p.y
    if interior == 1:
        values[1] = rhs[0] / bands[1, 0]
    else:
        values[1:-1] = solveh_banded(bands, rhs, lower=False)

    weights = np.full(n + 1, dt)
    weights[[0, -1]] = 0.5 * dt
    objective = (0.5 * np.sum(np.diff(values) ** 2) / dt
                 + 0.5 * alpha_sq * float(np.dot(weights, values ** 2)))
    integral = float(np.dot(weights, values))

    logger.debug("lemma2_oracle", n=n, alpha=p.alpha, length=p.length, objective=objective)
    return DiscreteSolution(
        grid=uniform_grid(p.s, p.T, n),
        values=values,
        objective=float(objective),
        integral=integral,
    )
