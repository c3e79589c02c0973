"""Exact weight and perverse filtration computations and mirror P=W checks."""

from .hodge import MixedHodgeTable, PerverseHodgeTable, PWTable, pw_polynomial
from .polyalg import LaurentPoly, mirror_transform, render

__all__ = [
    "LaurentPoly",
    "MixedHodgeTable",
    "PWTable",
    "PerverseHodgeTable",
    "mirror_transform",
    "pw_polynomial",
    "render",
]

__version__ = "0.1.0"
