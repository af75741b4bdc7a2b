"""Positivity verdicts and numeric criteria.

``classify`` reads the grades of positivity off the model.  The remaining
functions turn criteria for syzygies and Seshadri constants into finite
checks: lattice searches for obstructing classes, a closed-form degree bound
for curves, and a Pell-equation bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd, isqrt

from .core.linalg import inverse
from .core.model import DivisorClass, SurfaceModel, coerce_class
from .core.quadratic import QuadraticNumber
from .errors import NotAbelianModel, NotAmple, PreconditionError
from .zariski import is_ample, is_nef, is_pseudo_effective, volume

__all__ = [
    "PositivityReport", "classify", "NpVerdict", "np_check", "lattice_classes",
    "ReiderCandidate", "reider_check", "REIDER_CASES", "green_bound",
    "green_slope_inequality", "green_classical_bound", "PellBound",
    "pell_fundamental_solution", "pell_seshadri_bound",
]


@dataclass(frozen=True)
class PositivityReport:
    pseff: bool
    big: bool
    nef: bool
    ample: bool
    conditional: bool = False

    def labels(self) -> list[str]:
        return [k for k in ("pseff", "big", "nef", "ample") if getattr(self, k)]


def classify(model: SurfaceModel, D) -> PositivityReport:
    D = coerce_class(model, D)
    pseff = is_pseudo_effective(model, D)
    return PositivityReport(
        pseff=pseff,
        big=pseff and volume(model, D) > 0,
        nef=is_nef(model, D),
        ample=is_ample(model, D),
        conditional=not model.complete,
    )


# ------------------------------------------------------------ lattice search

def lattice_classes(model: SurfaceModel, L: DivisorClass, radius: Fraction):
    """Integer classes v with ``2(L.v)^2/L^2 - v^2 <= radius``.

    For L with ``L^2 > 0`` the form ``Q(v) = 2(L.v)^2/L^2 - v^2`` is positive
    definite (Hodge index), so ``v_i^2 <= radius * (Q^-1)_ii`` bounds a box
    that contains every solution.
    """
    n = model.rank
    g = model.gram
    L2 = model.square(L)
    if L2 <= 0:
        raise PreconditionError("needs L^2 > 0")
    gl = [sum((g[i][j] * L[j] for j in range(n)), Fraction(0)) for i in range(n)]
    M = [[2 * gl[i] * gl[j] / L2 - g[i][j] for j in range(n)] for i in range(n)]
    Minv = inverse(M)
    bounds = []
    for i in range(n):
        b2 = radius * Minv[i][i]
        bounds.append(isqrt(math.floor(b2)) if b2 > 0 else 0)
    for v in product(*(range(-b, b + 1) for b in bounds)):
        if any(v):
            d = DivisorClass(v)
            lv = model.intersect(L, d)
            if 2 * lv * lv / L2 - model.square(d) <= radius:
                yield d


def _curve_name(model, v: DivisorClass):
    rec = model.find_curve(v)
    return rec.name if rec is not None else None


@dataclass(frozen=True)
class NpVerdict:
    p: int
    holds: bool
    precondition_ok: bool
    witness: DivisorClass | None = None
    witness_curve: str | None = None
    witness_degree: Fraction | None = None
    conditional: bool = True

    @property
    def verdict(self) -> str:
        """HOLDS, FAILS, or INCONCLUSIVE when ``L^2 < 5(p+2)^2``.

        Below the degree threshold the criterion says nothing, so a witness
        found there is reported but does not turn the verdict into FAILS.
        """
        if self.holds:
            return "HOLDS"
        if self.precondition_ok:
            return "FAILS"
        return "INCONCLUSIVE"


def np_check(model: SurfaceModel, L, p: int) -> NpVerdict:
    """Property (N_p) for an ample L on an abelian surface.

    Holds when ``L^2 >= 5(p+2)^2`` and no primitive class v with ``v^2 = 0``,
    ``v.A > 0`` and ``1 <= L.v <= p+2`` exists (such a v is the class of an
    elliptic curve of low degree).
    """
    if not model.abelian or model.negative_curves or (
            model.canonical is not None and not model.canonical.is_zero()):
        raise NotAbelianModel(f"model {model.name!r} is not declared abelian")
    L = coerce_class(model, L)
    if p < 0:
        raise PreconditionError("p must be non-negative")
    if not is_ample(model, L):
        raise NotAmple("L must be ample")
    pre = model.square(L) >= 5 * (p + 2) ** 2
    radius = Fraction(2 * (p + 2) ** 2) / model.square(L)
    A = model.ample_ref
    found = []
    for v in lattice_classes(model, L, radius):
        if model.square(v) != 0 or model.intersect(v, A) <= 0:
            continue
        lv = model.intersect(L, v)
        if 1 <= lv <= p + 2 and gcd(*(int(c) for c in v.coords)) == 1:
            found.append((lv, _curve_name(model, v) is None, tuple(v.coords), v))
    if found:
        found.sort()
        lv, _, _, v = found[0]
        return NpVerdict(p, False, pre, v, _curve_name(model, v), lv)
    return NpVerdict(p, pre, pre)


REIDER_CASES = {
    "basepoint": ((0, -1), (1, 0)),
    "separation": ((0, -1), (0, -2), (1, 0), (1, -1), (2, 0)),
}
_REIDER_MIN = {"basepoint": 5, "separation": 10}


@dataclass(frozen=True)
class ReiderCandidate:
    cls: DivisorClass
    degree: Fraction
    square: Fraction
    curve: str | None


def reider_check(model: SurfaceModel, L, mode: str = "basepoint") -> list[ReiderCandidate]:
    """Classes that could obstruct ``K + L`` (base points or separation).

    An empty list means, model-conditionally, that ``|K + L|`` is base point
    free (``basepoint``) or very ample (``separation``).
    """
    if mode not in REIDER_CASES:
        raise ValueError(f"mode must be one of {sorted(REIDER_CASES)}")
    L = coerce_class(model, L)
    if not is_nef(model, L):
        raise PreconditionError("L must be nef")
    if model.square(L) < _REIDER_MIN[mode]:
        raise PreconditionError(f"{mode} mode needs L^2 >= {_REIDER_MIN[mode]}")
    cases = set(REIDER_CASES[mode])
    L2 = model.square(L)
    radius = max(Fraction(2 * k * k) / L2 - s for k, s in cases)
    A = model.ample_ref
    out = []
    seen = set()
    for v in list(c.cls for c in model.curves) + list(lattice_classes(model, L, radius)):
        if v in seen or model.intersect(v, A) <= 0:
            continue
        pair = (model.intersect(L, v), model.square(v))
        if pair in cases:
            seen.add(v)
            out.append(ReiderCandidate(v, pair[0], pair[1], _curve_name(model, v)))
    out.sort(key=lambda c: (c.curve is None, c.degree, -c.square, c.cls.coords))
    return out


# ------------------------------------------------------------ curves and Pell

def green_bound(g: int, p: int) -> QuadraticNumber:
    """Degree threshold ``g + (g+p-2 + sqrt((g+p-2)^2 + 4(g(p-2)+2)))/2``."""
    if g < 0 or p < 0:
        raise PreconditionError("g and p must be non-negative")
    a = g + p - 2
    disc = a * a + 4 * (g * (p - 2) + 2)
    if disc < 0:
        raise PreconditionError("negative discriminant")
    return g + (a + QuadraticNumber.sqrt(disc)) / 2


def green_classical_bound(g: int, p: int) -> int:
    return 2 * g + 1 + p


def green_slope_inequality(g: int, p: int, degree: int, s: int = 1) -> bool:
    """``C(r,i+1)(2g-2-s d) + C(r-1,i) d < 0`` for all ``0 <= i <= p``, r = d+1-g."""
    r = degree + 1 - g
    if r < 1:
        return False
    return all(comb(r, i + 1) * (2 * g - 2 - s * degree) + comb(r - 1, i) * degree < 0
               for i in range(p + 1))


def pell_fundamental_solution(N: int) -> tuple[int, int]:
    """Smallest ``(y, x)`` with ``y^2 - N x^2 = 1``, via the continued fraction of sqrt N."""
    a0 = isqrt(N)
    if a0 * a0 == N:
        raise PreconditionError(f"{N} is a perfect square")
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - N * k * k != 1:
        m = d * a - m
        d = (N - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


@dataclass(frozen=True)
class PellBound:
    N: int
    p0: int
    q0: int
    bound: Fraction
    note: str = "(p0, q0) = (x, y) for the solution of y^2 - N x^2 = 1"


def pell_seshadri_bound(N: int) -> PellBound:
    if N <= 0:
        raise PreconditionError("N must be positive")
    y, x = pell_fundamental_solution(N)
    return PellBound(N, x, y, Fraction(x * N, y))
