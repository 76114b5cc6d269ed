"""Exact homology, face rings, and intersection products of even-dimensional
torus manifolds assembled from manifolds with corners."""

from .cycles import CycleExpression, GeometryOracle, IntersectionCalculator
from .fixtures import load_fixture, parse_fixture, resolve_fixture
from .generator import polygon_with_holes
from .manifold import TorusManifold

__version__ = "0.1.0"

__all__ = [
    "CycleExpression",
    "GeometryOracle",
    "IntersectionCalculator",
    "TorusManifold",
    "load_fixture",
    "parse_fixture",
    "polygon_with_holes",
    "resolve_fixture",
    "__version__",
]
