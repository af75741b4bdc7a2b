"""Finite numerical models of smooth projective surfaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import DimensionMismatch, ModelError
from .linalg import signature
from .quadratic import QuadraticNumber

__all__ = [
    "DivisorClass", "CurveRecord", "PointProfile", "SurfaceModel",
    "ValidationReport", "intersect", "validate_model", "quadratic_smaller_root",
    "GENERIC",
]

GENERIC = "generic"


@dataclass(frozen=True)
class DivisorClass:
    """A numerical class given by exact rational coordinates in the model basis."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> DivisorClass:
        return cls([0] * rank)

    @classmethod
    def basis_vector(cls, rank: int, i: int) -> DivisorClass:
        return cls([int(j == i) for j in range(rank)])

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: DivisorClass):
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(
                f"classes of length {len(self.coords)} and {len(other.coords)}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, c) -> DivisorClass:
        c = Fraction(c)
        return DivisorClass(c * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __repr__(self):
        return "DivisorClass(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class CurveRecord:
    name: str
    cls: DivisorClass
    genus: int | None = None
    self_intersection: int | None = None


@dataclass(frozen=True)
class PointProfile:
    """Local data at a point: multiplicities of the listed curves there, and
    the order of vanishing of each curve restricted to a flag curve.

    ``ord_on`` maps ``(curve, flag_curve)`` to ``ord_x(curve|flag_curve)``.
    Missing entries for a curve through the point default to its
    multiplicity (transversal intersection with a smooth flag curve).
    ``directions`` holds profiles of points on the exceptional curve of the
    blow-up at this point, keyed by name, in terms of the upstairs curves.
    """

    name: str
    mult: Mapping[str, int] = field(default_factory=dict)
    ord_on: Mapping[tuple[str, str], int] = field(default_factory=dict)
    tags: frozenset[str] = frozenset()
    directions: tuple["PointProfile", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mult", dict(self.mult))
        object.__setattr__(self, "ord_on", dict(self.ord_on))
        object.__setattr__(self, "tags", frozenset(self.tags))
        object.__setattr__(self, "directions", tuple(self.directions))

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.mult.items())),
                     tuple(sorted(self.ord_on.items())), self.tags,
                     self.directions))

    @property
    def is_generic(self) -> bool:
        return self.name == GENERIC

    def multiplicity(self, curve: str) -> int:
        return self.mult.get(curve, 0)

    def order_on(self, curve: str, flag_curve: str) -> int:
        m = self.mult.get(curve, 0)
        if m == 0:
            return 0
        return self.ord_on.get((curve, flag_curve), m)

    def direction(self, name: str) -> PointProfile:
        for z in self.directions:
            if z.name == name:
                return z
        raise KeyError(f"point {self.name!r} has no direction {name!r}")


def generic_point() -> PointProfile:
    """A point on no listed curve other than the flag curve itself."""
    return PointProfile(GENERIC)


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    canonical: DivisorClass | None
    ample_ref: DivisorClass
    curves: tuple[CurveRecord, ...] = ()
    points: tuple[PointProfile, ...] = ()
    complete: bool = True
    abelian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(
            self, "gram", tuple(tuple(Fraction(x) for x in row) for row in self.gram))
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "points", tuple(self.points))

    def __hash__(self):
        return hash((self.name, self.basis, self.gram))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def intersect(self, d1: DivisorClass, d2: DivisorClass) -> Fraction:
        return intersect(self, d1, d2)

    def square(self, d: DivisorClass) -> Fraction:
        return intersect(self, d, d)

    @cached_property
    def _curve_index(self) -> dict[str, int]:
        return {c.name: i for i, c in enumerate(self.curves)}

    def curve(self, name: str) -> CurveRecord:
        try:
            return self.curves[self._curve_index[name]]
        except KeyError:
            raise KeyError(f"model {self.name!r} has no curve {name!r}") from None

    def has_curve(self, name: str) -> bool:
        return name in self._curve_index

    def curve_position(self, name: str) -> int:
        return self._curve_index[name]

    def point(self, name: str) -> PointProfile:
        if name == GENERIC:
            return generic_point()
        for p in self.points:
            if p.name == name:
                return p
        raise KeyError(f"model {self.name!r} has no point {name!r}")

    @cached_property
    def negative_curves(self) -> tuple[CurveRecord, ...]:
        return tuple(c for c in self.curves if self.square(c.cls) < 0)

    @cached_property
    def curve_duals(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows ``gram * C`` so that ``D.C`` is a plain dot product."""
        g = self.gram
        return tuple(
            tuple(sum((g[i][j] * c for j, c in enumerate(cr.cls.coords) if c), Fraction(0))
                  for i in range(self.rank))
            for cr in self.curves)

    def pairings(self, d: DivisorClass) -> tuple[Fraction, ...]:
        """``(d . C)`` for every listed curve, in list order."""
        if len(d.coords) != self.rank:
            raise DimensionMismatch(f"class of length {len(d.coords)} on a rank {self.rank} model")
        dc = d.coords
        return tuple(sum((a * b for a, b in zip(dc, dual) if a), Fraction(0))
                     for dual in self.curve_duals)

    @cached_property
    def curve_pairings(self) -> tuple[tuple[Fraction, ...], ...]:
        """Intersection matrix of all listed curves (cached)."""
        return tuple(self.pairings(a.cls) for a in self.curves)

    def find_curve(self, cls: DivisorClass) -> CurveRecord | None:
        for c in self.curves:
            if c.cls == cls:
                return c
        return None


def intersect(model: SurfaceModel, d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """The intersection number ``d1 . d2`` computed from the Gram matrix."""
    n = model.rank
    if len(d1.coords) != n or len(d2.coords) != n:
        raise DimensionMismatch(
            f"expected classes of length {n}, got {len(d1.coords)} and {len(d2.coords)}")
    g = model.gram
    total = Fraction(0)
    for i, a in enumerate(d1.coords):
        if a:
            row = g[i]
            total += a * sum((row[j] * b for j, b in enumerate(d2.coords) if b),
                             Fraction(0))
    return total


def quadratic_smaller_root(a, b, c) -> QuadraticNumber:
    """Smaller real root of ``a t^2 + b t + c`` as an exact quadratic number."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        raise ValueError("degenerate quadratic (a = 0); solve linearly")
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError("negative discriminant")
    root = QuadraticNumber.sqrt(disc)
    if a > 0:
        return (QuadraticNumber(-b) - root) / (2 * a)
    return (QuadraticNumber(-b) + root) / (2 * a)


def quadratic_roots(a, b, c) -> tuple[QuadraticNumber, QuadraticNumber] | None:
    """Both real roots (smaller first), or None if the discriminant is negative."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    r1 = quadratic_smaller_root(a, b, c)
    r2 = QuadraticNumber(-b / a) - r1
    return r1, r2


@dataclass
class ValidationReport:
    valid: bool
    signature: tuple[int, int, int]
    failures: list[str]

    def __str__(self):
        pos, neg, zero = self.signature
        head = f"{'valid' if self.valid else 'INVALID'}, signature ({pos},{neg})"
        if zero:
            head += f", {zero} null direction(s)"
        return "\n".join([head] + [f"  - {f}" for f in self.failures])


def validate_model(model: SurfaceModel) -> ValidationReport:
    failures: list[str] = []
    n = model.rank
    g = model.gram
    if len(g) != n or any(len(row) != n for row in g):
        return ValidationReport(False, (0, 0, 0), [f"gram is not {n}x{n}"])
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                failures.append(f"gram not symmetric at ({i},{j})")
    sig = signature(g) if not failures else (0, 0, 0)
    if not failures:
        pos, neg, zero = sig
        if zero:
            failures.append("gram is degenerate")
        if pos != 1:
            failures.append(f"signature ({pos},{neg}) violates the Hodge index theorem")
    if len(set(model.basis)) != n:
        failures.append("duplicate basis names")
    for c in model.curves:
        if len(c.cls) != n:
            failures.append(f"curve {c.name}: class has wrong length")
    for d, label in ((model.ample_ref, "ample reference"), (model.canonical, "canonical class")):
        if d is not None and len(d) != n:
            failures.append(f"{label} has wrong length")
    if failures:
        return ValidationReport(False, sig, failures)

    names = [c.name for c in model.curves]
    if len(set(names)) != len(names):
        failures.append("duplicate curve names")
    classes = [c.cls for c in model.curves]
    if len(set(classes)) != len(classes):
        failures.append("duplicate curve classes")
    for c in model.curves:
        sq = model.square(c.cls)
        if c.self_intersection is not None and sq != c.self_intersection:
            failures.append(f"curve {c.name}: declared self-intersection "
                            f"{c.self_intersection}, computed {sq}")
        if c.genus is not None:
            if c.genus < 0:
                failures.append(f"curve {c.name}: negative genus")
            elif model.canonical is not None:
                lhs = 2 * c.genus - 2
                rhs = sq + model.intersect(c.cls, model.canonical)
                if lhs != rhs:
                    failures.append(f"curve {c.name}: adjunction fails "
                                    f"(2g-2 = {lhs}, C^2 + C.K = {rhs})")
    a = model.ample_ref
    if model.square(a) <= 0:
        failures.append("ample reference has A^2 <= 0")
    for c in model.curves:
        if model.intersect(a, c.cls) <= 0:
            failures.append(f"ample reference is not positive on {c.name}")
    if model.abelian:
        if model.canonical is None or not model.canonical.is_zero():
            failures.append("abelian model must have K = 0")
        if model.negative_curves:
            failures.append("abelian model lists negative curves")

    def check_point(p: PointProfile, m: SurfaceModel | None):
        for cname, mult in p.mult.items():
            if m is not None and not m.has_curve(cname):
                failures.append(f"point {p.name}: unknown curve {cname}")
            if mult < 0:
                failures.append(f"point {p.name}: negative multiplicity for {cname}")
        for (cname, fname), order in p.ord_on.items():
            if order < 0:
                failures.append(f"point {p.name}: negative order for {cname} on {fname}")
            if order and p.mult.get(cname, 0) == 0:
                failures.append(f"point {p.name}: {cname} does not pass through the "
                                f"point but has order {order} on {fname}")
            if p.mult.get(fname, 0) == 0 and (m is None or m.has_curve(fname)):
                if m is not None:
                    failures.append(f"point {p.name}: flag curve {fname} does not "
                                    "pass through the point")

    for p in model.points:
        check_point(p, model)
        for z in p.directions:
            check_point(z, None)
    return ValidationReport(not failures, sig, failures)


def require_valid(model: SurfaceModel) -> SurfaceModel:
    report = validate_model(model)
    if not report.valid:
        raise ModelError(f"model {model.name!r} failed validation:\n{report}", report)
    return model


def coerce_class(model: SurfaceModel, d) -> DivisorClass:
    if isinstance(d, CurveRecord):
        d = d.cls
    if not isinstance(d, DivisorClass):
        d = DivisorClass(d)
    if len(d) != model.rank:
        raise DimensionMismatch(f"class of length {len(d)} on a rank {model.rank} model")
    return d


def as_rows(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in m)
