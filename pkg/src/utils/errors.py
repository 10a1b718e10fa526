"""
Error Types

Single exception hierarchy for the library. Numerical failures carry the best
result available at the point of failure so callers can report it.
"""

from typing import Any, Optional


class OUImpactError(Exception):
    """Base class for all library errors"""


class DomainError(OUImpactError, ValueError):
    """Input outside the domain of an operation (non-finite, negative, out of range)"""


class UnsupportedCaseError(DomainError):
    """Closed form not available for the requested case (e.g. phi0 != 0)"""


class QuadratureError(OUImpactError, ArithmeticError):
    """Adaptive quadrature did not reach its tolerance"""

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class SolverError(OUImpactError, ArithmeticError):
    """Iterative solver did not converge"""

    def __init__(self, message: str, best_iterate: Any, iterations: int):
        super().__init__(message)
        self.best_iterate = best_iterate
        self.iterations = iterations


class IntegrationError(OUImpactError, ArithmeticError):
    """Strategy integration produced a non-finite rate"""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class MonteCarloError(OUImpactError, ArithmeticError):
    """Monte Carlo run aborted on a flagged path"""

    def __init__(self, message: str, path_index: Optional[int] = None):
        super().__init__(message)
        self.path_index = path_index


class ConfigValidationError(OUImpactError, ValueError):
    """Run configuration failed validation"""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field_path = field_path
