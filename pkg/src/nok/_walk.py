"""Exact walk of the Zariski decomposition along a ray ``D - tG``.

On a fixed support S the negative part solves a linear system whose right
hand side is affine in t, so ``N(t) = A + tB`` and ``P(t) = P0 + tP1``.  The
support stays valid on the interval where the coefficients are
non-negative, ``P(t)`` is non-negative on the other listed curves and
``P(t)^2 >= 0``.  Walking from one such interval to the next covers the whole
big part of the ray.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core.linalg import solve
from .core.model import DivisorClass, SurfaceModel, quadratic_roots
from .core.quadratic import QuadraticNumber
from .errors import NotBig, NotPseudoEffective
from .zariski import zariski_decompose

Number = Union[Fraction, QuadraticNumber]

_MAX_HALVINGS = 160


@dataclass(frozen=True)
class PathSegment:
    start: Number
    end: Number | None
    support: tuple[str, ...]
    const: dict[str, Fraction]
    slope: dict[str, Fraction]
    P0: DivisorClass
    P1: DivisorClass

    def coefficient(self, name: str, t) -> Number:
        return self.const.get(name, Fraction(0)) + t * self.slope.get(name, Fraction(0))

    def positive_part(self, t: Fraction) -> DivisorClass:
        return self.P0 + Fraction(t) * self.P1


@dataclass(frozen=True)
class _Piece:
    segment: PathSegment
    lo: Number | None
    is_end: bool


def _root_bounds(qa, qb, qc, ts):
    """Nearest roots of qa t^2 + qb t + qc below and above ts."""
    if qa == 0:
        if qb == 0:
            return None, None
        r = -qc / qb
        return (r, None) if r < ts else (None, r)
    roots = quadratic_roots(qa, qb, qc)
    if roots is None:
        return None, None
    below = [r for r in roots if r < ts]
    above = [r for r in roots if r > ts]
    return (max(below) if below else None), (min(above) if above else None)


def _simplify(x):
    if isinstance(x, QuadraticNumber) and x.is_rational:
        return x.a
    return x


def _piece(model: SurfaceModel, D, G, ts: Fraction) -> _Piece | None:
    """Support and validity interval of the decomposition at ``D - ts G``."""
    try:
        zd = zariski_decompose(model, D - ts * G)
    except NotPseudoEffective:
        return None
    if model.square(zd.P) <= 0:
        return None
    names = sorted(zd.N, key=model.curve_position)
    idx = [model.curve_position(n) for n in names]
    pair = model.curve_pairings
    dc, gc = model.pairings(D), model.pairings(G)
    if idx:
        gram_s = [[pair[i][j] for j in idx] for i in idx]
        x0 = solve(gram_s, [dc[j] for j in idx])
        x1 = solve(gram_s, [-gc[j] for j in idx])
    else:
        x0, x1 = [], []
    P0, P1 = D, -G
    for a, b, i in zip(x0, x1, idx):
        P0 = P0 - a * model.curves[i].cls
        P1 = P1 - b * model.curves[i].cls

    lo: Number | None = None
    hi: Number | None = None
    linear = list(zip(x0, x1))
    inside = set(idx)
    p0c, p1c = model.pairings(P0), model.pairings(P1)
    linear += [(p0c[k], p1c[k]) for k in range(len(model.curves)) if k not in inside]
    A = model.ample_ref
    linear.append((model.intersect(P0, A), model.intersect(P1, A)))
    for a, b in linear:
        if b > 0:
            r = -a / b
            lo = r if lo is None or r > lo else lo
        elif b < 0:
            r = -a / b
            hi = r if hi is None or r < hi else hi
    qlo, qhi = _root_bounds(model.square(P1), 2 * model.intersect(P0, P1),
                            model.square(P0), ts)
    if qlo is not None and (lo is None or qlo > lo):
        lo = _simplify(qlo)
    is_end = qhi is not None and (hi is None or qhi <= hi)
    if is_end:
        hi = _simplify(qhi)
    seg = PathSegment(
        start=lo, end=hi, support=tuple(sorted(names)),
        const={n: a for n, a in zip(names, x0)},
        slope={n: b for n, b in zip(names, x1)},
        P0=P0, P1=P1)
    return _Piece(seg, lo, is_end)


def walk(model: SurfaceModel, D: DivisorClass, G: DivisorClass, t0=0,
         t_max=None) -> tuple[list[PathSegment], Number | None]:
    """Segments covering ``{t >= t0 : D - tG big}`` (capped at ``t_max``).

    Returns the segments and the right end of the walk: the bigness
    threshold, ``t_max`` when the cap is hit first, or None for an unbounded
    ray without a cap.
    """
    t = Fraction(t0)
    t_max = None if t_max is None else Fraction(t_max)
    if _piece(model, D, G, t) is None:
        raise NotBig(f"D - {t}G is not big")
    segments: list[PathSegment] = []
    h = Fraction(1) if t_max is None else (t_max - t) / 2
    while True:
        piece = None
        for _ in range(_MAX_HALVINGS):
            cand = _piece(model, D, G, t + h)
            if cand is not None and (cand.lo is None or cand.lo <= t):
                piece = cand
                break
            h /= 2
        if piece is None:
            raise NotBig(f"no big class found to the right of t = {t}")
        seg = piece.segment
        end = seg.end
        capped = t_max is not None and (end is None or end >= t_max)
        if capped:
            end = t_max
        segments.append(PathSegment(t, end, seg.support, seg.const, seg.slope,
                                    seg.P0, seg.P1))
        if capped or end is None or piece.is_end:
            return segments, end
        h = max(h, (end - t))
        t = end
