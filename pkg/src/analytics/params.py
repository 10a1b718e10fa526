"""
Model Parameters

Market and problem constants. Mean-reversion rate, volatility and risk
aversion are normalized to 1; callers rescale their inputs to match.
"""

import math
from dataclasses import asdict, dataclass
from typing import Dict

from ..utils.errors import DomainError


def require_finite(name: str, value: float) -> float:
    """Return value as float or raise DomainError if it is not finite"""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Long-term mean, initial price, market depth, horizon and initial position"""
    mu: float
    s0: float
    delta: float
    horizon: float
    phi0: float = 0.0

    def __post_init__(self):
        for name in ("mu", "s0", "delta", "horizon", "phi0"):
            object.__setattr__(self, name, require_finite(name, getattr(self, name)))
        if self.delta <= 0:
            raise DomainError(f"delta must be > 0, got {self.delta}")
        if self.horizon <= 0:
            raise DomainError(f"horizon must be > 0, got {self.horizon}")

    @property
    def theta(self) -> float:
        """Initial distance of the price from its long-term mean"""
        return self.mu - self.s0

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)
