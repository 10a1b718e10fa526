#!/usr/bin/env python3
"""
Tests for the value-shape function, its derivative and its integral
"""

import math

import numpy as np
import pytest
from scipy.integrate import simpson

from src.analytics import (
    ValueShape,
    average_value_shape_deficit,
    value_shape,
    value_shape_derivative,
    value_shape_integral,
    value_shape_limit,
    value_shape_saturated,
)
from src.utils.errors import DomainError

DELTAS = [0.1, 0.5, 1.0, 2.0, 5.0, 20.0]
GRID = np.linspace(0.0, 50.0, 200)


def central_difference(delta, t, step=1e-5):
    return (value_shape(delta, t + step) - value_shape(delta, t - step)) / (2.0 * step)


@pytest.mark.parametrize("delta", [1e-3, 0.5, 1.0, 7.0, 1e4])
def test_zero_at_origin(delta):
    assert value_shape(delta, 0.0) == 0.0


@pytest.mark.parametrize("t", [0.0, 0.3, 5.0, 1e3])
def test_zero_without_impact_depth(t):
    assert value_shape(0.0, t) == 0.0
    assert value_shape_integral(0.0, 10.0) == 0.0


@pytest.mark.parametrize("delta", DELTAS)
def test_strictly_increasing_and_bounded(delta):
    values = np.array([value_shape(delta, t) for t in GRID])
    assert np.all(np.diff(values) > 0)
    assert values.min() >= 0.0
    assert values.max() < value_shape_limit(delta)


@pytest.mark.parametrize("delta", [0.5, 2.0, 5.0])
def test_nonnegative_and_increasing_near_origin(delta):
    times = np.logspace(-9, -3, 400)
    values = np.array([value_shape(delta, t) for t in times])
    assert values.min() > 0.0
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("delta", [0.5, 2.0, 5.0])
def test_cubic_onset(delta):
    t = 1e-6
    assert value_shape(delta, t) == pytest.approx(delta * t ** 3 / 3.0, rel=1e-4)


@pytest.mark.parametrize("delta", [0.5, 2.0, 5.0])
def test_continuous_where_evaluation_switches(delta):
    t = 1.0 / math.sqrt(1.0 + delta)
    assert value_shape(delta, t * (1.0 - 1e-12)) == pytest.approx(value_shape(delta, t), abs=1e-12)


@pytest.mark.parametrize("delta", DELTAS)
def test_derivative_components_positive(delta):
    for t in GRID[1:]:
        d = value_shape_derivative(delta, t)
        assert d.vdot > 0
        assert d.a >= 0
        assert d.b >= 0
        assert d.c > 0


def test_derivative_vanishes_at_origin():
    d = value_shape_derivative(1.0, 0.0)
    assert d == (0.0, 0.0, 0.0, 0.0)


def test_derivative_near_origin_is_quadratic():
    # V grows like delta t^3 / 3 near 0
    delta, t = 1.0, 1e-3
    assert value_shape_derivative(delta, t).vdot == pytest.approx(delta * t * t, rel=1e-2)


def test_derivative_c_component_is_sinh_squared():
    delta, t = 2.0, 0.7
    x = math.sqrt(1.0 + delta) * t
    assert value_shape_derivative(delta, t).c == pytest.approx(delta ** 2 * math.sinh(x) ** 2, rel=1e-12)


def test_derivative_matches_finite_difference_example():
    vdot = value_shape_derivative(2.0, 1.0).vdot
    assert central_difference(2.0, 1.0) == pytest.approx(vdot, rel=1e-6)


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("t", [0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0])
def test_derivative_consistency(delta, t):
    vdot = value_shape_derivative(delta, t).vdot
    assert abs(vdot - central_difference(delta, t)) <= 1e-6 * (1.0 + abs(vdot))


@pytest.mark.parametrize("t", [0.1, 1.0, 5.0, 20.0])
def test_components_nonnegative_small_delta(t):
    d = value_shape_derivative(0.5, t)
    assert min(d.a, d.b, d.c) >= 0


@pytest.mark.parametrize("delta", [0.5, 3.0, 99.0])
@pytest.mark.parametrize("scaled_t", [1e2, 1e3, 1e4])
def test_no_overflow(delta, scaled_t):
    t = scaled_t / math.sqrt(1.0 + delta)
    v = value_shape(delta, t)
    assert math.isfinite(v)
    assert 0.0 < v < value_shape_limit(delta)
    assert math.isfinite(value_shape_derivative(delta, t).vdot)


def test_large_time_approach_is_algebraic():
    delta, t = 3.0, 20.0
    root = 2.0
    big_l = 1.0 + delta + delta * t
    gap = root * delta ** 2 / (root * big_l + 1.0 + delta ** 2)
    assert value_shape_limit(delta) - value_shape(delta, t) == pytest.approx(gap, rel=1e-10)


@pytest.mark.parametrize("delta", DELTAS)
def test_saturated_form_once_hyperbolics_settle(delta):
    t = 40.0 / math.sqrt(1.0 + delta)
    for s in (t, 2 * t, 10 * t):
        assert abs(value_shape(delta, s) - value_shape_saturated(delta, s)) <= 1e-12


@pytest.mark.parametrize("delta", DELTAS + [3.0])
def test_limit(delta):
    assert abs(value_shape(delta, 1e8) - (math.sqrt(1.0 + delta) - 1.0)) <= 1e-6


def test_integral_matches_fine_simpson():
    grid = np.linspace(0.0, 1.0, 2 ** 20 + 1)
    fine = simpson(np.vectorize(lambda t: value_shape(1.0, t))(grid), x=grid)
    assert value_shape_integral(1.0, 1.0, tol=1e-10) == pytest.approx(fine, abs=1e-8)


def test_integral_bounds():
    delta, horizon = 2.0, 7.0
    integral = value_shape_integral(delta, horizon)
    assert 0.0 <= integral <= value_shape_limit(delta) * horizon


def test_cesaro_mean_with_log_correction():
    delta, horizon = 3.0, 200.0
    mean = value_shape_integral(delta, horizon, tol=1e-8) / horizon
    corrected = mean + average_value_shape_deficit(delta, horizon)
    assert abs(corrected - 1.0) <= 2e-2


def test_deficit_matches_saturated_integral():
    delta, horizon = 1.0, 30.0
    grid = np.linspace(0.0, horizon, 20001)
    gap = simpson([value_shape_limit(delta) - value_shape_saturated(delta, t) for t in grid], x=grid)
    assert average_value_shape_deficit(delta, horizon) == pytest.approx(gap / horizon, rel=1e-8)


def test_value_shape_object_matches_functions():
    shape = ValueShape(1.5)
    assert shape(0.8) == value_shape(1.5, 0.8)
    assert shape.limit == value_shape_limit(1.5)
    assert shape.derivative(0.8) == value_shape_derivative(1.5, 0.8)


@pytest.mark.parametrize("delta, t", [(-1.0, 1.0), (1.0, -0.1), (float("nan"), 1.0), (1.0, float("inf"))])
def test_invalid_inputs(delta, t):
    with pytest.raises(DomainError):
        value_shape(delta, t)


def test_derivative_requires_positive_delta():
    with pytest.raises(DomainError):
        value_shape_derivative(0.0, 1.0)
