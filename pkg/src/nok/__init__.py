"""Exact Zariski decompositions, Newton-Okounkov polygons and positivity
criteria on finitely modelled surfaces."""
from .core import (
    CurveRecord, DivisorClass, PointProfile, QuadraticNumber, SurfaceModel,
    intersect, quadratic_smaller_root, validate_model,
)

__version__ = "0.1.0"

__all__ = [
    "CurveRecord", "DivisorClass", "PointProfile", "QuadraticNumber", "SurfaceModel",
    "intersect", "quadratic_smaller_root", "validate_model", "__version__",
]
