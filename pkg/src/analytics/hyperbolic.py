"""
Overflow-safe hyperbolic ratios.

Every helper works with e^{-y} for y >= 0 so arguments up to 1e4 and beyond
stay finite.
"""

import math


def sech(y: float) -> float:
    e = math.exp(-abs(y))
    return 2.0 * e / (1.0 + e * e)


def csch(y: float) -> float:
    """1/sinh(y) for y > 0"""
    return 2.0 * math.exp(-y) / -math.expm1(-2.0 * y)


def coth(y: float) -> float:
    """cosh(y)/sinh(y) for y > 0"""
    return (1.0 + math.exp(-2.0 * y)) / -math.expm1(-2.0 * y)


def sinh_ratio(u: float, v: float) -> float:
    """sinh(u)/sinh(v) for 0 <= u <= v, v > 0"""
    return math.exp(u - v) * math.expm1(-2.0 * u) / math.expm1(-2.0 * v)


def cosh_sinh_ratio(u: float, v: float) -> float:
    """cosh(u)/sinh(v) for 0 <= u <= v, v > 0"""
    return math.exp(u - v) * (1.0 + math.exp(-2.0 * u)) / -math.expm1(-2.0 * v)


def sinh_minus_identity(y: float) -> float:
    """sinh(y) - y without cancellation near 0 (finite only while sinh is)"""
    if y < 0.1:
        y2 = y * y
        return y * y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0)))
    return math.sinh(y) - y


def sinh_minus_identity_over_cosh_squared(y: float) -> float:
    """(sinh(y) - y)/cosh(y)^2 for y >= 0"""
    if y < 0.1:
        return sinh_minus_identity(y) * sech(y) ** 2
    s = sech(y)
    return math.tanh(y) * s - y * s * s


def half_sinh_over_cosh(y: float) -> float:
    """sinh(y/2)/cosh(y) for y >= 0"""
    return math.exp(-0.5 * y) * -math.expm1(-y) / (1.0 + math.exp(-2.0 * y))


def identity_cosh_minus_sinh(y: float) -> float:
    """y cosh(y) - sinh(y) for moderate y >= 0, relative error O(eps) near 0"""
    half = math.sinh(0.5 * y)
    return 2.0 * y * half * half - sinh_minus_identity(y)
