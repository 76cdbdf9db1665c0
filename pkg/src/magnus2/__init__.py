"""Closed-form calculus for 2x2 matrices in the operator norm.

exp/log, BCH and Schur derivatives, operator-norm geometry
(principal/chiral disks), Magnus exponents and minimal normal forms,
and the critical-BCH boundary surface, all in skew-quaternionic
coordinates and cross-checked against brute-force numeric oracles.
"""

from ._backend import BACKEND
from .m2 import M2C, M2R, op_norm, signed_conorm, skew_of_entries
from .explog import exp2, is_logable, log2

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "M2R",
    "M2C",
    "op_norm",
    "signed_conorm",
    "skew_of_entries",
    "exp2",
    "log2",
    "is_logable",
]
