"""
Terminal-coupled quadratic problem: closed form and Galerkin oracle.

Writing g = F - theta - delta z/(1+delta) with z = I - theta turns the
functional into a fixed-endpoint problem with alpha = sqrt(1+delta) plus a
quadratic in z. Its minimizer z_hat gives the optimal total trade
I = z_hat + theta = (kappa theta - phi0) / denom.
"""

import numpy as np
import structlog
from scipy.sparse.linalg import LinearOperator, cg

from ..analytics import hyperbolic
from ..analytics.feedback import feedback_coefficients
from ..analytics.value_shape import ValueShape
from ..utils.config import config
from ..utils.errors import DomainError, SolverError, UnsupportedCaseError
from .endpoint import lemma2_optimizer_derivative
from .problems import DiscreteSolution, EndpointProblem, TerminalCoupledProblem

logger = structlog.get_logger(__name__)


def lemma3_z_hat(p: TerminalCoupledProblem) -> float:
    a = p.root
    y = a * p.length
    denom = feedback_coefficients(p.delta, p.length).denom
    numerator = (p.phi0
                 + p.delta * p.theta * hyperbolic.coth(y) / a
                 + p.theta * hyperbolic.csch(y) / a)
    return -numerator / denom


def lemma3_integral_h_hat(p: TerminalCoupledProblem) -> float:
    coeffs = feedback_coefficients(p.delta, p.length)
    return (coeffs.kappa * p.theta - p.phi0) / coeffs.denom


def lemma3_min_value(p: TerminalCoupledProblem) -> float:
    if p.phi0 != 0.0:
        raise UnsupportedCaseError(
            f"closed-form minimum is available only for phi0 = 0, got {p.phi0}"
        )
    return 0.5 * ValueShape(p.delta)(p.length) * p.theta ** 2


def reduced_endpoint_problem(p: TerminalCoupledProblem) -> EndpointProblem:
    """Fixed-endpoint problem whose optimizer derivative is h_hat"""
    z = lemma3_z_hat(p)
    shift = p.delta * z / (1.0 + p.delta)
    return EndpointProblem(s=p.s, T=p.T, alpha=p.root, x=-p.theta - shift, y=z - shift)


def lemma3_h_hat(p: TerminalCoupledProblem, t: float) -> float:
    return lemma2_optimizer_derivative(reduced_endpoint_problem(p), t)


def l_part_value(delta: float, tau: float) -> float:
    """1/2 + minimum with theta = -1, phi0 = 0 over a window of length tau"""
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    if tau == 0.0:
        return 0.5
    return 0.5 + lemma3_min_value(TerminalCoupledProblem(s=0.0, T=tau, theta=-1.0, phi0=0.0, delta=delta))


class _PiecewiseConstantFunctional:
    """
    The functional restricted to h constant on each of n uniform cells.

    F is then piecewise linear with node values F_j = dt * sum_{i<j} h_i, so
    every integral is evaluated exactly.
    """

    def __init__(self, p: TerminalCoupledProblem, n: int):
        self.p = p
        self.n = n
        self.dt = p.length / n
        self.weights = np.full(n + 1, self.dt)
        self.weights[[0, -1]] = 0.5 * self.dt

    def antiderivative(self, h: np.ndarray) -> np.ndarray:
        return self.dt * np.concatenate(([0.0], np.cumsum(h)))

    def integrals(self, big_f: np.ndarray):
        """(int F, int F^2) for piecewise-linear F"""
        int_f = float(np.dot(self.weights, big_f))
        int_f2 = self.dt * float(np.sum(big_f[:-1] ** 2 + big_f[:-1] * big_f[1:] + big_f[1:] ** 2)) / 3.0
        return int_f, int_f2

    def objective(self, h: np.ndarray) -> float:
        p = self.p
        big_f = self.antiderivative(h)
        total = float(big_f[-1])
        int_f, int_f2 = self.integrals(big_f)
        return ((p.phi0 - p.theta) * total
                + 0.5 * total ** 2
                + 0.5 * self.dt * float(np.dot(h, h))
                + 0.5 * (int_f2 - 2.0 * p.theta * int_f + p.theta ** 2 * p.length)
                + 0.5 * p.delta * (p.length * total ** 2 - 2.0 * total * int_f + int_f2))

    def _adjoint(self, v: np.ndarray) -> np.ndarray:
        """C^T v where F = C h"""
        suffix = np.cumsum(v[::-1])[::-1]
        return self.dt * suffix[1:]

    def _mass(self, big_f: np.ndarray) -> np.ndarray:
        out = np.zeros_like(big_f)
        out[:-1] += self.dt / 6.0 * (2.0 * big_f[:-1] + big_f[1:])
        out[1:] += self.dt / 6.0 * (big_f[:-1] + 2.0 * big_f[1:])
        return out

    def hessian_matvec(self, h: np.ndarray) -> np.ndarray:
        """Hessian times h, divided by dt"""
        p = self.p
        big_f = self.antiderivative(h)
        total = big_f[-1]
        int_f = float(np.dot(self.weights, big_f))
        out = (1.0 + p.delta * p.length) * total * self.dt + self.dt * h
        out = out + (1.0 + p.delta) * self._adjoint(self._mass(big_f))
        out = out - p.delta * (int_f * self.dt + total * self._adjoint(self.weights))
        return out / self.dt

    def rhs(self) -> np.ndarray:
        """Negative gradient at h = 0, divided by dt"""
        p = self.p
        b = (p.theta - p.phi0) * self.dt * np.ones(self.n) + p.theta * self._adjoint(self.weights)
        return b / self.dt


def lemma3_objective(p: TerminalCoupledProblem, values: np.ndarray) -> float:
    """Exact functional value for h piecewise constant with the given cell values"""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 1:
        raise DomainError("values must be a non-empty 1-D array")
    return _PiecewiseConstantFunctional(p, values.size).objective(values)


def lemma3_oracle(p: TerminalCoupledProblem, n: int) -> DiscreteSolution:
    """
    Minimize the functional over piecewise-constant h on n cells with
    conjugate gradient. The Hessian is dense but each product costs O(n)
    through cumulative sums. The returned grid holds the cell midpoints.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    functional = _PiecewiseConstantFunctional(p, n)
    operator = LinearOperator((n, n), matvec=functional.hessian_matvec, dtype=float)

    iterations = [0]
    best = [np.zeros(n)]

    def _track(xk):
        iterations[0] += 1
        best[0] = xk.copy()

    numerics = config.numerics
    max_iter = numerics.cg_max_iter_factor * n
    values, info = cg(
        operator,
        functional.rhs(),
        rtol=numerics.cg_tolerance,
        atol=0.0,
        maxiter=max_iter,
        callback=_track,
    )
    if info != 0:
        logger.error("cg_not_converged", n=n, iterations=iterations[0], info=info)
        raise SolverError(
            f"conjugate gradient did not converge in {max_iter} iterations (info={info})",
            best_iterate=best[0],
            iterations=iterations[0],
        )

    logger.debug("lemma3_oracle", n=n, iterations=iterations[0], delta=p.delta, length=p.length)
    grid = p.s + functional.dt * (np.arange(n) + 0.5)
    return DiscreteSolution(
        grid=grid,
        values=values,
        objective=float(functional.objective(values)),
        integral=functional.dt * float(np.sum(values)),
        iterations=iterations[0],
    )
