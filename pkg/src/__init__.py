"""
OU Impact Verifier

Closed-form optimal trading under linear temporary price impact with an
Ornstein-Uhlenbeck price, cross-checked by discrete oracles and Monte Carlo.
"""

__version__ = "1.0.0"
__author__ = "Trading Team"
