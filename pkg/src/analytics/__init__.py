"""Closed-form value shape, optimal feedback strategy and optimal value"""

from .feedback import (
    FeedbackCoefficients,
    feedback_coefficients,
    feedback_rate,
    frictionless_target,
    target_position,
)
from .params import ModelParams
from .value import (
    CertaintyEquivalentRates,
    analytic_value,
    certainty_equivalent,
    certainty_equivalent_rates,
)
from .value_shape import (
    ValueShape,
    ValueShapeDerivative,
    average_value_shape_deficit,
    value_shape,
    value_shape_derivative,
    value_shape_integral,
    value_shape_limit,
    value_shape_saturated,
)

__all__ = [
    "ModelParams",
    "ValueShape",
    "ValueShapeDerivative",
    "FeedbackCoefficients",
    "CertaintyEquivalentRates",
    "value_shape",
    "value_shape_derivative",
    "value_shape_integral",
    "value_shape_saturated",
    "value_shape_limit",
    "average_value_shape_deficit",
    "feedback_coefficients",
    "feedback_rate",
    "target_position",
    "frictionless_target",
    "analytic_value",
    "certainty_equivalent",
    "certainty_equivalent_rates",
]
