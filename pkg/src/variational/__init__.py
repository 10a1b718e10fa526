"""Closed forms and discrete oracles for the reduced variational problems"""

from .duality import dual_value
from .endpoint import (
    lemma2_optimizer,
    lemma2_optimizer_derivative,
    lemma2_oracle,
    lemma2_value,
)
from .problems import DiscreteSolution, EndpointProblem, TerminalCoupledProblem
from .terminal import (
    l_part_value,
    lemma3_h_hat,
    lemma3_integral_h_hat,
    lemma3_min_value,
    lemma3_objective,
    lemma3_oracle,
    lemma3_z_hat,
)

__all__ = [
    "EndpointProblem",
    "TerminalCoupledProblem",
    "DiscreteSolution",
    "lemma2_value",
    "lemma2_optimizer",
    "lemma2_optimizer_derivative",
    "lemma2_oracle",
    "lemma3_z_hat",
    "lemma3_integral_h_hat",
    "lemma3_min_value",
    "lemma3_h_hat",
    "lemma3_objective",
    "lemma3_oracle",
    "l_part_value",
    "dual_value",
]
