"""Newton-Okounkov polygons of big classes with respect to a flag ``C ∋ x``.

Along the ray ``D - tC`` the negative part moves affinely between finitely
many breakpoints.  The polygon is ``{ν ≤ t ≤ μ, α(t) ≤ y ≤ β(t)}`` where
``α(t)`` is the order of vanishing at x of the restricted negative part and
``β(t) = α(t) + P(t).C``.  Everything is exact; only μ (and values at μ)
may be a quadratic irrational.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from ._walk import Number, PathSegment, walk
from .core.model import (
    DivisorClass, PointProfile, SurfaceModel, coerce_class, generic_point,
)
from .core.quadratic import QuadraticNumber
from .errors import (
    InadmissibleFlag, MonotonicityViolation, NotBig, NotPseudoEffective, PreconditionError,
)
from .zariski import zariski_decompose

__all__ = [
    "FlagSpec", "ZariskiPath", "PolygonPiece", "NOPolygon", "SliceLength",
    "zariski_path", "no_polygon", "polygon_area", "slice_length",
    "contains_origin", "largest_simplex", "min_sum", "restrict_above",
    "largest_inverted_simplex", "clip_halfplane", "shoelace_area",
    "standard_simplex", "resolve_flag",
]

Affine = tuple  # (constant, slope)


def _simp(x):
    if isinstance(x, QuadraticNumber) and x.is_rational:
        return x.a
    return x


def _exact(x):
    return _simp(x) if isinstance(x, QuadraticNumber) else Fraction(x)


def _eval(f: Affine, t) -> Number:
    return _simp(f[0] + f[1] * t)


# ------------------------------------------------------------ flags and paths

@dataclass(frozen=True)
class FlagSpec:
    """A flag ``Y1 = C ⊃ Y2 = x``: a curve (by name or class) and a point."""

    curve: Union[str, DivisorClass]
    point: str = "generic"


@dataclass(frozen=True)
class ResolvedFlag:
    name: str | None
    cls: DivisorClass
    point: PointProfile


def resolve_flag(model: SurfaceModel, flag: FlagSpec | str) -> ResolvedFlag:
    if isinstance(flag, str):
        flag = FlagSpec(flag)
    if isinstance(flag.curve, str):
        if not model.has_curve(flag.curve):
            raise InadmissibleFlag(f"unknown flag curve {flag.curve!r}")
        rec = model.curve(flag.curve)
    else:
        cls = coerce_class(model, flag.curve)
        if cls.is_zero():
            raise InadmissibleFlag("flag curve class is zero")
        rec = model.find_curve(cls)
        if rec is None:
            if model.square(cls) < 0:
                raise InadmissibleFlag("an unlisted flag curve must have C^2 >= 0")
            if flag.point != "generic":
                raise InadmissibleFlag("an unlisted flag curve only admits the generic point")
            return ResolvedFlag(None, cls, generic_point())
    point = flag.point if isinstance(flag.point, PointProfile) else model.point(flag.point)
    if not point.is_generic and point.multiplicity(rec.name) != 1:
        raise InadmissibleFlag(
            f"flag curve {rec.name} must pass through {point.name} with multiplicity 1")
    return ResolvedFlag(rec.name, rec.cls, point)


@dataclass(frozen=True)
class ZariskiPath:
    segments: tuple[PathSegment, ...]
    nu: Fraction
    mu: Number
    conditional: bool = False

    def negative_part(self, t) -> dict[str, Number]:
        for seg in self.segments:
            if seg.start <= t <= seg.end:
                return {n: seg.coefficient(n, t) for n in seg.support}
        raise ValueError(f"t = {t} outside [{self.nu}, {self.mu}]")


def zariski_path(model: SurfaceModel, D, G) -> ZariskiPath:
    """Negative part of ``D - tG`` for t in [ν, μ], segment by segment.

    ν is the coefficient of G in ``N_D`` when G is a listed curve, else 0.
    """
    D, G = coerce_class(model, D), coerce_class(model, G)
    try:
        zd = zariski_decompose(model, D)
    except NotPseudoEffective:
        raise NotBig("class is not pseudo-effective") from None
    if model.square(zd.P) <= 0:
        raise NotBig("class has volume 0")
    rec = model.find_curve(G)
    nu = zd.coefficient(rec.name) if rec is not None else Fraction(0)
    segments, end = walk(model, D, G, nu)
    if end is None:
        raise PreconditionError("D - tG stays big for all t; G is not a curve class")
    for seg in segments:
        bad = [n for n, b in seg.slope.items() if b < 0]
        if bad:
            raise MonotonicityViolation(
                f"coefficient of {bad[0]} decreases on [{seg.start}, {seg.end}]")
    return ZariskiPath(tuple(segments), nu, end, conditional=not model.complete)


# ------------------------------------------------------------ polygons

@dataclass(frozen=True)
class PolygonPiece:
    start: Number
    end: Number
    alpha: Affine
    beta: Affine


class SliceLength(NamedTuple):
    length: Number
    in_range: bool


@dataclass(frozen=True)
class NOPolygon:
    nu: Number
    mu: Number
    pieces: tuple[PolygonPiece, ...]
    conditional: bool = False

    @property
    def radicand(self) -> int:
        return self.mu.d if isinstance(self.mu, QuadraticNumber) else 0

    def _piece_at(self, t) -> PolygonPiece:
        if t < self.nu or t > self.mu:
            raise ValueError(f"t = {t} outside [{self.nu}, {self.mu}]")
        for p in self.pieces:
            if p.start <= t <= p.end:
                return p
        raise AssertionError("pieces do not cover [nu, mu]")

    def alpha(self, t) -> Number:
        return _eval(self._piece_at(t).alpha, t)

    def beta(self, t) -> Number:
        return _eval(self._piece_at(t).beta, t)

    def contains(self, t, y) -> bool:
        if t < self.nu or t > self.mu:
            return False
        p = self._piece_at(t)
        return _eval(p.alpha, t) <= y <= _eval(p.beta, t)

    def breakpoints(self) -> list[Number]:
        return [self.pieces[0].start] + [p.end for p in self.pieces]

    def lower_chain(self) -> list[tuple[Number, Number]]:
        pts = [(self.nu, _eval(self.pieces[0].alpha, self.nu))]
        pts += [(p.end, _eval(p.alpha, p.end)) for p in self.pieces]
        return pts

    def upper_chain(self) -> list[tuple[Number, Number]]:
        pts = [(self.nu, _eval(self.pieces[0].beta, self.nu))]
        pts += [(p.end, _eval(p.beta, p.end)) for p in self.pieces]
        return pts

    def vertices(self) -> list[tuple[Number, Number]]:
        """Vertices counter-clockwise from ``(ν, α(ν))``."""
        return _clean_cycle(self.lower_chain() + self.upper_chain()[::-1])

    def translate(self, dt) -> NOPolygon:
        def shift(f):
            return (_simp(f[0] - f[1] * dt), f[1])
        return NOPolygon(
            _simp(self.nu + dt), _simp(self.mu + dt),
            tuple(PolygonPiece(_simp(p.start + dt), _simp(p.end + dt), shift(p.alpha),
                               shift(p.beta)) for p in self.pieces),
            self.conditional)

    def truncate(self, t0) -> NOPolygon:
        """The part with ``t >= t0``."""
        if t0 <= self.nu:
            return self
        pieces = [replace(p, start=max(p.start, t0)) for p in self.pieces if p.end > t0]
        return NOPolygon(t0, self.mu, tuple(pieces), self.conditional)

    @classmethod
    def from_vertices(cls, vertices: Sequence[tuple]) -> NOPolygon:
        """Rebuild from a convex vertex list in counter-clockwise order."""
        pts = [(_exact(t), _exact(y)) for t, y in vertices]
        if len(pts) < 3:
            raise ValueError("a polygon needs at least three vertices")
        k = min(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
        pts = pts[k:] + pts[:k]
        t_max = max(p[0] for p in pts)
        i = 1
        lower = [pts[0]]
        while i < len(pts) and pts[i][0] > lower[-1][0]:
            lower.append(pts[i])
            i += 1
        if lower[-1][0] != t_max:
            raise ValueError("vertices are not a convex counter-clockwise cycle")
        path = pts[i - 1:] + [pts[0]]       # lower right, over the top, to lower left
        while len(path) > 1 and path[1][0] == t_max:
            path.pop(0)
        t_min = pts[0][0]
        while len(path) > 1 and path[-2][0] == t_min:
            path.pop()
        upper = path[::-1]
        ts = sorted({p[0] for p in lower} | {p[0] for p in upper})
        pieces = []
        for a, b in zip(ts, ts[1:]):
            pieces.append(PolygonPiece(a, b, _chain_line(lower, a, b), _chain_line(upper, a, b)))
        return cls(ts[0], ts[-1], tuple(pieces))


def _chain_line(chain, a, b) -> Affine:
    for (t1, y1), (t2, y2) in zip(chain, chain[1:]):
        if t1 <= a and b <= t2 and t1 != t2:
            slope = _simp((y2 - y1) / (t2 - t1))
            return (_simp(y1 - slope * t1), slope)
    raise ValueError("chain does not cover the interval")


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _clean_cycle(pts: list) -> list:
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(1, len(out) + 1):
            j = i % len(out)
            if j == 0:
                continue  # the first vertex is lexicographically extreme
            if _cross(out[i - 1], out[j], out[(j + 1) % len(out)]) == 0:
                del out[j]
                changed = True
                break
    return out


def shoelace_area(vertices: Sequence[tuple]) -> Number:
    n = len(vertices)
    s = Fraction(0)
    for i in range(n):
        (x1, y1), (x2, y2) = vertices[i], vertices[(i + 1) % n]
        s = s + x1 * y2 - x2 * y1
    return _simp(s / 2)


def standard_simplex(lam=1) -> NOPolygon:
    lam = Fraction(lam)
    return NOPolygon.from_vertices([(0, 0), (lam, 0), (0, lam)])


def no_polygon(model: SurfaceModel, D, flag: FlagSpec | str) -> NOPolygon:
    D = coerce_class(model, D)
    f = resolve_flag(model, flag)
    path = zariski_path(model, D, f.cls)
    C = f.cls
    pieces = []
    for seg in path.segments:
        a0 = a1 = Fraction(0)
        for name in seg.support:
            if name == f.name:
                raise AssertionError("flag curve inside the negative part past ν")
            o = f.point.order_on(name, f.name) if f.name else 0
            if o:
                a0 += o * seg.const[name]
                a1 += o * seg.slope[name]
        pc0 = model.intersect(seg.P0, C)
        pc1 = model.intersect(seg.P1, C)
        pieces.append(PolygonPiece(seg.start, seg.end, (a0, a1), (a0 + pc0, a1 + pc1)))
    return NOPolygon(path.nu, path.mu, tuple(pieces), path.conditional)


# ------------------------------------------------------------ queries

def polygon_area(poly: NOPolygon) -> Number:
    total = Fraction(0)
    for p in poly.pieces:
        c = p.beta[0] - p.alpha[0]
        s = p.beta[1] - p.alpha[1]
        total = total + c * (p.end - p.start) + s * (p.end * p.end - p.start * p.start) / 2
    return _simp(total)


def slice_length(poly: NOPolygon, t) -> SliceLength:
    if t < poly.nu or t > poly.mu:
        return SliceLength(Fraction(0), False)
    p = poly._piece_at(t)
    return SliceLength(_simp(_eval(p.beta, t) - _eval(p.alpha, t)), True)


def contains_origin(poly: NOPolygon) -> bool:
    return poly.nu == 0 and _eval(poly.pieces[0].alpha, 0) == 0


def _alpha_zero_end(poly: NOPolygon) -> Number:
    """Right end of ``{t : α(t) = 0}`` for a polygon with α(ν) = 0."""
    for p in poly.pieces:
        if _eval(p.alpha, p.end) != 0:
            return p.start
    return poly.mu


def largest_simplex(poly: NOPolygon) -> Number:
    """Largest λ with the simplex (0,0), (λ,0), (0,λ) inside the polygon."""
    if not contains_origin(poly):
        return Fraction(0)
    return min(poly.mu, _alpha_zero_end(poly), poly.beta(0))


def largest_inverted_simplex(poly: NOPolygon) -> Number:
    """Largest ξ with the triangle (0,0), (ξ,0), (ξ,ξ) inside the polygon."""
    if not contains_origin(poly):
        return Fraction(0)
    bound = min(poly.mu, _alpha_zero_end(poly))
    # β(t) - t is concave and β(0) >= 0: find where it first turns negative
    for p in poly.pieces:
        g0, g1 = p.beta[0], p.beta[1] - 1
        if _eval((g0, g1), p.end) < 0:
            cross = _simp(-g0 / g1) if g1 != 0 else p.start
            return min(bound, max(cross, p.start))
    return bound


def min_sum(poly: NOPolygon) -> Number:
    """Minimum of ``t + y`` over the polygon."""
    return min(_simp(t + y) for t, y in poly.lower_chain())


def restrict_above(poly: NOPolygon, t0, model: SurfaceModel, D, flag) -> NOPolygon:
    """Polygon of ``D - t0 C`` shifted by ``(t0, 0)``; checked against ``poly``."""
    t0 = Fraction(t0)
    if t0 >= poly.mu:
        raise PreconditionError(f"t0 = {t0} must be below μ = {poly.mu}")
    if t0 < 0:
        raise PreconditionError("t0 must be non-negative")
    f = resolve_flag(model, flag)
    D = coerce_class(model, D)
    shifted = no_polygon(model, D - t0 * f.cls, flag).translate(t0)
    expected = poly.truncate(t0)
    if shifted.vertices() != expected.vertices():
        raise AssertionError(
            f"restriction mismatch: {shifted.vertices()} != {expected.vertices()}")
    return shifted


# ------------------------------------------------------------ clipping

def clip_halfplane(vertices: Sequence[tuple], a, b, c) -> list[tuple]:
    """Sutherland-Hodgman step keeping ``a t + b y + c >= 0``."""
    out = []
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0) and fp != 0 and fq != 0:
            s = fp / (fp - fq)
            out.append((_simp(p[0] + s * (q[0] - p[0])), _simp(p[1] + s * (q[1] - p[1]))))
    return _dedupe(out)


def _dedupe(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return out
