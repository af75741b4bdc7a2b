"""Blow-ups at a point, infinitesimal polygons and Seshadri constants.

The infinitesimal polygon of D at x is the polygon of ``π*D`` on the blow-up
``π: X' -> X`` at x, taken with respect to the exceptional curve E and a
point z on it.  A generic z sees no other curve, so α vanishes identically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core.model import (
    CurveRecord, DivisorClass, PointProfile, SurfaceModel, coerce_class, require_valid,
)
from .core.quadratic import QuadraticNumber
from .errors import NotAmple, PreconditionError
from .polygon import (
    FlagSpec, NOPolygon, Number, _simp, clip_halfplane, largest_inverted_simplex,
    no_polygon, shoelace_area, slice_length,
)
from .zariski import base_locus, is_ample, is_nef

__all__ = [
    "BlowUpModel", "InvertedSimplex", "blow_up", "infinitesimal_polygon",
    "largest_inverted_simplex", "seshadri", "SeshadriResult", "seshadri_details",
    "RegionCheck", "lambda_region_check", "seshadri_upper_from_region",
    "very_general_cap", "LAMBDA_NOTE", "SMALL_SESHADRI_BOUND",
]

COMPLETE_TAG = "blowup-complete"
VERY_GENERAL_TAG = "very-general"

LAMBDA_NOTE = ("region uses {t >= 2, y >= 0, t >= 2y}; the prose variant "
               "{t >= 2, 0 <= y <= 2t} is a different set")

SMALL_SESHADRI_BOUND = QuadraticNumber(Fraction(5, 2), Fraction(-1, 2), 5)


@dataclass(frozen=True)
class InvertedSimplex:
    """The triangle ``{0 <= t <= xi, 0 <= y <= t}``."""

    xi: Number

    def vertices(self):
        return [(Fraction(0), Fraction(0)), (self.xi, Fraction(0)), (self.xi, self.xi)]

    def polygon(self) -> NOPolygon:
        return NOPolygon.from_vertices(self.vertices())


@dataclass(frozen=True)
class BlowUpModel:
    base: SurfaceModel
    center: str
    model: SurfaceModel
    exceptional: str

    def pullback(self, D) -> DivisorClass:
        D = coerce_class(self.base, D)
        return DivisorClass(tuple(D.coords) + (0,))

    def pushforward(self, D) -> DivisorClass:
        D = coerce_class(self.model, D)
        return DivisorClass(D.coords[:-1])

    def proper_transform(self, curve: str) -> DivisorClass:
        x = self.base.point(self.center)
        c = self.base.curve(curve)
        return self.pullback(c.cls) - x.multiplicity(curve) * self.E

    @property
    def E(self) -> DivisorClass:
        return DivisorClass.basis_vector(self.model.rank, self.model.rank - 1)


def _exceptional_name(model: SurfaceModel, x: str) -> str:
    taken = set(model.basis) | {c.name for c in model.curves}
    name = f"E_{x}"
    while name in taken:
        name += "'"
    return name


def _ample_upstairs(model: SurfaceModel, x: PointProfile, A2: DivisorClass, E: DivisorClass):
    A = model.ample_ref
    eps = Fraction(1)
    for name, m in x.mult.items():
        if m:
            eps = min(eps, model.intersect(A, model.curve(name).cls) / m)
    eps /= 2
    while eps * eps >= model.square(A):
        eps /= 2
    return A2 - eps * E


def blow_up(model: SurfaceModel, x: PointProfile | str) -> BlowUpModel:
    if isinstance(x, str):
        x = model.point(x)
    if x.is_generic:
        x = PointProfile("generic")
    for name in x.mult:
        if not model.has_curve(name):
            raise PreconditionError(f"point {x.name}: multiplicity given for unknown curve {name}")
    n = model.rank
    ename = _exceptional_name(model, x.name)
    gram = [list(row) + [Fraction(0)] for row in model.gram]
    gram.append([Fraction(0)] * n + [Fraction(-1)])
    up = lambda d: DivisorClass(tuple(d.coords) + (0,))  # noqa: E731
    E = DivisorClass.basis_vector(n + 1, n)
    curves = [CurveRecord(ename, E, 0, -1)]
    for c in model.curves:
        m = x.multiplicity(c.name)
        curves.append(CurveRecord(c.name, up(c.cls) - m * E, None))
    points = []
    for z in x.directions:
        mult = dict(z.mult)
        mult[ename] = 1
        points.append(PointProfile(z.name, mult, z.ord_on, z.tags))
    for p in model.points:
        if p.name != x.name and p.name not in {q.name for q in points}:
            points.append(PointProfile(p.name, p.mult, p.ord_on, p.tags))
    canonical = None if model.canonical is None else up(model.canonical) + E
    up_model = SurfaceModel(
        name=f"{model.name}+blowup({x.name})", basis=model.basis + (ename,), gram=gram,
        canonical=canonical, ample_ref=_ample_upstairs(model, x, up(model.ample_ref), E),
        curves=tuple(curves), points=tuple(points),
        complete=model.complete and COMPLETE_TAG in x.tags, abelian=False)
    for c in model.curves:
        m = x.multiplicity(c.name)
        ct = up_model.curve(c.name).cls
        assert up_model.square(ct) == model.square(c.cls) - m * m
        assert up_model.intersect(ct, E) == m
    require_valid(up_model)
    return BlowUpModel(model, x.name, up_model, ename)


def infinitesimal_polygon(model: SurfaceModel, D, x: PointProfile | str,
                          z: str = "generic") -> NOPolygon:
    """Polygon of ``π*D`` for the flag ``(E, z)`` over x."""
    bu = blow_up(model, x)
    return no_polygon(bu.model, bu.pullback(D), FlagSpec(bu.exceptional, z))


# ------------------------------------------------------------ Seshadri constants

@dataclass(frozen=True)
class SeshadriResult:
    value: Number
    from_polygon: Number
    binding_curve: str | None
    nef_only: bool
    conditional: bool


def _formula(model, D, x: PointProfile):
    best: Number = QuadraticNumber.sqrt(model.square(D))
    best = _simp(best)
    binding = None
    for name, m in sorted(x.mult.items()):
        if m > 0:
            r = model.intersect(D, model.curve(name).cls) / m
            if r < best:
                best, binding = r, name
    return best, binding


def seshadri_details(model: SurfaceModel, D, x: PointProfile | str) -> SeshadriResult:
    D = coerce_class(model, D)
    if isinstance(x, str):
        x = model.point(x)
    nef_only = False
    if not is_ample(model, D):
        if not is_nef(model, D) or model.square(D) <= 0:
            raise NotAmple("Seshadri constants need an ample (or nef and big) class")
        nef_only = True
        plus = base_locus(model, D, "augmented").curves
        hit = [c for c in plus if x.multiplicity(c) > 0]
        if hit:
            raise PreconditionError(f"{x.name} lies in the augmented base locus (on {hit[0]})")
    value, binding = _formula(model, D, x)
    bu = blow_up(model, x)
    poly = no_polygon(bu.model, bu.pullback(D), FlagSpec(bu.exceptional, "generic"))
    xi = largest_inverted_simplex(poly)
    if xi != value and bu.model.complete:
        raise AssertionError(f"Seshadri mismatch: curves give {value}, polygon gives {xi}")
    return SeshadriResult(value, xi, binding, nef_only, not bu.model.complete)


def seshadri(model: SurfaceModel, D, x: PointProfile | str) -> Number:
    """``min(min_C D.C / mult_x C, sqrt(D^2))`` over listed curves through x."""
    return seshadri_details(model, D, x).value


def very_general_cap(model: SurfaceModel, L, x: PointProfile | str):
    """Check the generic polygon at a very general point against its cap.

    If ``ε = p/q`` comes from a listed curve with ``q >= 2`` the polygon must
    sit inside the triangle ``(0,0), (p/q, p/q), (p/(q-1), 0)``.  Returns the
    triangle and the verdict, or None when the cap does not apply.
    """
    if isinstance(x, str):
        x = model.point(x)
    if VERY_GENERAL_TAG not in x.tags:
        return None
    L = coerce_class(model, L)
    value, binding = _formula(model, L, x)
    if binding is None:
        return None
    q = x.multiplicity(binding)
    if q < 2:
        return None
    p = model.intersect(L, model.curve(binding).cls)
    tri = [(Fraction(0), Fraction(0)), (p / (q - 1), Fraction(0)), (p / q, p / q)]
    poly = infinitesimal_polygon(model, L, x)
    inside = all(_in_triangle(v, tri) for v in poly.vertices())
    return tri, inside


def _in_triangle(v, tri) -> bool:
    from .polygon import _cross
    signs = [_cross(tri[i], tri[(i + 1) % 3], v) for i in range(3)]
    return all(s >= 0 for s in signs)


# ------------------------------------------------------------ region criterion

@dataclass(frozen=True)
class RegionCheck:
    region_ok: bool
    slice2: Number
    clipped: tuple
    verdict: str
    note: str = LAMBDA_NOTE


def _region(poly: NOPolygon):
    pts = poly.vertices()
    for a, b, c in ((1, 0, -2), (0, 1, 0), (1, -2, 0)):
        pts = clip_halfplane(pts, a, b, c)
        if not pts:
            break
    area = shoelace_area(pts) if len(pts) >= 3 else Fraction(0)
    return area > 0, tuple(pts)


def lambda_region_check(model: SurfaceModel, B, x: PointProfile | str,
                        z: str = "generic") -> RegionCheck:
    B = coerce_class(model, B)
    if not is_ample(model, B):
        raise NotAmple("the region criterion needs an ample class")
    poly = infinitesimal_polygon(model, B, x, z)
    ok, pts = _region(poly)
    s2 = slice_length(poly, Fraction(2)).length
    verdict = ("singular-divisor-exists (model-conditional)" if ok
               else "no conclusion")
    return RegionCheck(ok, s2, pts, verdict)


def seshadri_upper_from_region(model: SurfaceModel, B, x: PointProfile | str,
                               z: str = "generic") -> Number | None:
    """``(5 - sqrt 5)/2`` when ``B^2 >= 5`` and the region check fails."""
    B = coerce_class(model, B)
    if model.square(B) < 5:
        raise PreconditionError("needs B^2 >= 5")
    check = lambda_region_check(model, B, x, z)
    return None if check.region_ok else SMALL_SESHADRI_BOUND
