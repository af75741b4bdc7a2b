"""Exact arithmetic and the lattice model of a surface."""
from .linalg import is_negative_definite, signature, solve
from .model import (
    GENERIC, CurveRecord, DivisorClass, PointProfile, SurfaceModel,
    ValidationReport, generic_point, intersect, quadratic_roots,
    quadratic_smaller_root, require_valid, validate_model,
)
from .quadratic import QuadraticNumber, as_quadratic

__all__ = [
    "QuadraticNumber", "as_quadratic", "DivisorClass", "CurveRecord",
    "PointProfile", "SurfaceModel", "ValidationReport", "GENERIC",
    "generic_point", "intersect", "quadratic_smaller_root", "quadratic_roots",
    "validate_model", "require_valid", "signature", "solve",
    "is_negative_definite",
]
