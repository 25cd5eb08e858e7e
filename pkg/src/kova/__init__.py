"""kova: exact-arithmetic analysis of quasi-homogeneous polynomial ODE systems.

Kovalevskaya exponents, classical/extended Painleve tests, weighted projective
charts, Poincare-Dulac normal forms, weighted blow-ups, and the first
Painleve hierarchy as a structured test corpus.
"""

__version__ = "0.1.0"

from .poly import Poly
from .ext import Ext, ExtField
from .matrix import Matrix, charpoly, solve_linear
from .roots import RootSet, extract_roots

__all__ = [
    "Poly",
    "Ext",
    "ExtField",
    "Matrix",
    "charpoly",
    "solve_linear",
    "RootSet",
    "extract_roots",
]
