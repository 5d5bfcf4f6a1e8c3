"""Planar soap-bubble complexes: circular-arc geometry, regularity checks,
standard constructions, perimeter-reducing moves, and numeric minimization."""

from .arc_geometry import ArcSpec, Point
from .complex_model import (
    BubbleComplex,
    ComplexBuilder,
    ComplexError,
    EdgeRecord,
    add_disjoint_circles,
    circle_complex,
    disjoint_union,
)

__all__ = [
    "ArcSpec",
    "Point",
    "BubbleComplex",
    "ComplexBuilder",
    "ComplexError",
    "EdgeRecord",
    "add_disjoint_circles",
    "circle_complex",
    "disjoint_union",
]

__version__ = "0.1.0"
