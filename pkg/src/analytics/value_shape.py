"""
Value-Shape Function

V(t) drives both the optimal value and the optimal feedback rate. With
a = sqrt(1+delta), x = a*t, L = 1+delta+delta*t and P = 1+delta^2,

    V(t) + 1 = (a sinh x + a^2 L cosh x) / (a L sinh x + P cosh x + 2 delta)

Numerator and denominator are divided by cosh x before the ratio is taken,
which keeps every term bounded for arbitrarily large x. Below x = 1 the
difference numerator - denominator is formed in closed form instead, since
the ratio itself tends to 1 and subtracting 1 leaves only rounding noise.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import structlog

from ..utils.errors import DomainError
from ..utils.quadrature import adaptive_simpson
from . import hyperbolic
from .params import require_finite

logger = structlog.get_logger(__name__)


class ValueShapeDerivative(NamedTuple):
    """dV/dt with the three nonnegative components of its numerator"""
    vdot: float
    a: float
    b: float
    c: float


def _check_delta(delta: float, allow_zero: bool) -> float:
    delta = require_finite("delta", delta)
    if delta < 0 or (delta == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise DomainError(f"delta must be {bound}, got {delta}")
    return delta


def _check_time(name: str, t: float) -> float:
    t = require_finite(name, t)
    if t < 0:
        raise DomainError(f"{name} must be >= 0, got {t}")
    return t


@dataclass(frozen=True)
class ValueShape:
    """V(t) for a fixed market depth delta (delta = 0 gives V = 0)"""
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "delta", _check_delta(self.delta, allow_zero=True))

    @property
    def root(self) -> float:
        return math.sqrt(1.0 + self.delta)

    @property
    def limit(self) -> float:
        """sup of V, approached as t grows"""
        return self.root - 1.0

    def _stable_denominator(self, t: float) -> float:
        a, d = self.root, self.delta
        x = a * t
        return a * (1.0 + d + d * t) * math.tanh(x) + 1.0 + d * d + 2.0 * d * hyperbolic.sech(x)

    def __call__(self, t: float) -> float:
        t = _check_time("t", t)
        if t == 0.0 or self.delta == 0.0:
            return 0.0
        a, d = self.root, self.delta
        x = a * t
        if x < 1.0:
            # numerator - denominator, times cosh x, with the x^2 terms cancelled
            half = math.sinh(0.5 * x)
            excess = a * hyperbolic.identity_cosh_minus_sinh(x) - 4.0 * half * hyperbolic.identity_cosh_minus_sinh(0.5 * x)
            return d * excess / (math.cosh(x) * self._stable_denominator(t))
        big_l = 1.0 + d + d * t
        numerator = a * math.tanh(x) + a * a * big_l
        return numerator / self._stable_denominator(t) - 1.0

    def saturated(self, t: float) -> float:
        """V with tanh replaced by 1 and sech by 0"""
        t = _check_time("t", t)
        a, d = self.root, self.delta
        big_l = 1.0 + d + d * t
        return a * (1.0 + a * big_l) / (a * big_l + 1.0 + d * d) - 1.0

    def derivative(self, t: float) -> ValueShapeDerivative:
        """
        dV/dt = delta (1+delta) (A + B + C) / den^2 where den is the raw
        denominator and

            A = 2 a^3 (sinh x - x) + 2 a delta t sinh x
            B = 4 a^2 sinh^2(x/2) - delta a^2 t^2
            C = delta^2 sinh^2 x

        vdot is assembled from the components divided by cosh^2 x; the raw
        components are returned as well and may be inf for very large x.
        """
        t = _check_time("t", t)
        d = self.delta
        if d == 0.0:
            raise DomainError("derivative requires delta > 0")
        if t == 0.0:
            return ValueShapeDerivative(0.0, 0.0, 0.0, 0.0)

        a = self.root
        x = a * t
        s = hyperbolic.sech(x)
        th = math.tanh(x)

        a_scaled = (2.0 * a ** 3 * hyperbolic.sinh_minus_identity_over_cosh_squared(x)
                    + 2.0 * a * d * t * th * s)
        b_scaled = 4.0 * a * a * hyperbolic.half_sinh_over_cosh(x) ** 2 - d * a * a * t * t * s * s
        c_scaled = d * d * th * th

        den = self._stable_denominator(t)
        vdot = d * (1.0 + d) * (a_scaled + b_scaled + c_scaled) / (den * den)

        with np.errstate(over="ignore"):
            sinh_x = np.sinh(np.float64(x))
            sinh_half = np.sinh(np.float64(0.5 * x))
            if x < 0.1:
                a_raw = 2.0 * a ** 3 * hyperbolic.sinh_minus_identity(x) + 2.0 * a * d * t * sinh_x
            else:
                a_raw = 2.0 * a ** 3 * (sinh_x - x) + 2.0 * a * d * t * sinh_x
            b_raw = 4.0 * a * a * sinh_half * sinh_half - d * a * a * t * t
            c_raw = d * d * sinh_x * sinh_x
        return ValueShapeDerivative(vdot=vdot, a=float(a_raw), b=float(b_raw), c=float(c_raw))

    def integral(self, horizon: float, tol: Optional[float] = None) -> float:
        """Integral of V over [0, horizon] by adaptive Simpson"""
        horizon = _check_time("horizon", horizon)
        if self.delta == 0.0 or horizon == 0.0:
            return 0.0
        estimate, error = adaptive_simpson(self.__call__, 0.0, horizon, tol=tol)
        logger.debug("value_shape_integral", delta=self.delta, horizon=horizon,
                     estimate=estimate, error_estimate=error)
        return estimate

    def average_deficit(self, horizon: float) -> float:
        """(1/T) times the integral of (limit - saturated V) over [0, T]"""
        horizon = _check_time("horizon", horizon)
        if horizon == 0.0:
            raise DomainError("horizon must be > 0")
        a, d = self.root, self.delta
        p = 1.0 + d * d
        start = a * (1.0 + d) + p
        return d / horizon * math.log1p(a * d * horizon / start)


def value_shape(delta: float, t: float) -> float:
    return ValueShape(delta)(t)


def value_shape_derivative(delta: float, t: float) -> ValueShapeDerivative:
    return ValueShape(_check_delta(delta, allow_zero=False)).derivative(t)


def value_shape_integral(delta: float, horizon: float, tol: Optional[float] = None) -> float:
    return ValueShape(delta).integral(horizon, tol)


def value_shape_saturated(delta: float, t: float) -> float:
    return ValueShape(delta).saturated(t)


def value_shape_limit(delta: float) -> float:
    return ValueShape(delta).limit


def average_value_shape_deficit(delta: float, horizon: float) -> float:
    return ValueShape(_check_delta(delta, allow_zero=False)).average_deficit(horizon)
