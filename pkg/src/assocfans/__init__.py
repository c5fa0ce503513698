"""Exact constructions, verification, and classification of associahedron
realizations: the secondary polytope of a convex polygon, the
Minkowski-weight and difference-constraint polytopes, the sign-sequence
family, and the seed-triangulation family, all over exact rational
arithmetic, with normal-fan comparison and class counting on top.
"""

from .exactlin import QMatrix, QVector, Rat
from .polygon import Diagonal, SignSequence, Triangulation
from .realization import HPolytope, LabeledFan, RealizationReport

__all__ = [
    "Diagonal",
    "HPolytope",
    "LabeledFan",
    "QMatrix",
    "QVector",
    "Rat",
    "RealizationReport",
    "SignSequence",
    "Triangulation",
]
