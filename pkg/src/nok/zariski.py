"""Zariski decomposition and the invariants read off from it.

Every function takes a validated :class:`SurfaceModel`. Results depend on the
listed curves being all negative curves of the surface; when the model does
not claim completeness the results carry ``conditional = True``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .core.linalg import is_negative_definite, solve
from .core.model import DivisorClass, PointProfile, SurfaceModel, coerce_class
from .errors import NotBig, NotPseudoEffective

__all__ = [
    "ZariskiDecomposition", "BaseLocus", "zariski_decompose", "volume",
    "asymptotic_cohomology", "base_locus", "asymptotic_multiplicity",
    "is_big", "is_pseudo_effective", "is_nef", "is_ample", "null_curves",
]


@dataclass(frozen=True)
class ZariskiDecomposition:
    D: DivisorClass
    P: DivisorClass
    N: dict[str, Fraction] = field(default_factory=dict)
    conditional: bool = False

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(sorted(self.N))

    def coefficient(self, name: str) -> Fraction:
        return self.N.get(name, Fraction(0))

    def negative_class(self, model: SurfaceModel) -> DivisorClass:
        total = DivisorClass.zero(model.rank)
        for name, a in self.N.items():
            total = total + a * model.curve(name).cls
        return total


@dataclass(frozen=True)
class BaseLocus:
    curves: frozenset[str]
    kind: Literal["restricted", "augmented"]
    conditional: bool = False


def _solve_support(model, S: list[int], dc: tuple[Fraction, ...]):
    """Coefficients x with (sum x_i C_i).C_j = D.C_j for j in S, or None."""
    pair = model.curve_pairings
    gram_s = [[pair[i][j] for j in S] for i in S]
    if not is_negative_definite(gram_s):
        return None
    return solve(gram_s, [dc[j] for j in S])


def zariski_decompose(model: SurfaceModel, D) -> ZariskiDecomposition:
    """Decompose ``D = P + N``.

    Curves with ``D.C < 0`` seed the support; the linear system
    ``N.C_j = D.C_j`` is solved on it and any curve still pairing negatively
    with ``P`` is added in one batch, until ``P`` is nef on the model.
    """
    D = coerce_class(model, D)
    curves = model.curves
    negative = {i for i, c in enumerate(curves) if model.curve_pairings[i][i] < 0}
    dc = model.pairings(D)
    S = sorted(i for i in negative if dc[i] < 0)
    x: list[Fraction] = []
    while True:
        if S:
            x = _solve_support(model, S, dc)
            if x is None:
                raise NotPseudoEffective("negative part support is not negative definite")
            if any(a < 0 for a in x):
                raise NotPseudoEffective("negative coefficient in the negative part")
        pair = model.curve_pairings
        pc = [dc[k] - sum((a * pair[i][k] for a, i in zip(x, S)), Fraction(0))
              for k in range(len(curves))]
        chosen = set(S)
        new = [k for k in negative if k not in chosen and pc[k] < 0]
        if not new:
            break
        S = sorted(chosen.union(new))
    P = D
    N: dict[str, Fraction] = {}
    for a, i in zip(x, S):
        if a:
            N[curves[i].name] = a
            P = P - a * curves[i].cls
    if any(v < 0 for v in pc):
        raise NotPseudoEffective("positive part is negative on a listed curve")
    if model.square(P) < 0 or model.intersect(P, model.ample_ref) < 0:
        raise NotPseudoEffective("positive part is not nef")
    zd = ZariskiDecomposition(D, P, N, conditional=not model.complete)
    assert all(model.intersect(P, curves[i].cls) == 0 for i in S), "P.N_i != 0"
    return zd


def is_pseudo_effective(model: SurfaceModel, D) -> bool:
    try:
        zariski_decompose(model, D)
    except NotPseudoEffective:
        return False
    return True


def volume(model: SurfaceModel, D) -> Fraction:
    """``P^2`` for pseudo-effective D, and 0 otherwise."""
    try:
        zd = zariski_decompose(model, D)
    except NotPseudoEffective:
        return Fraction(0)
    return model.square(zd.P)


def is_big(model: SurfaceModel, D) -> bool:
    return volume(model, D) > 0


def _nef_values(model, D):
    D = coerce_class(model, D)
    return model.pairings(D), model.square(D), model.intersect(D, model.ample_ref)


def is_nef(model: SurfaceModel, D) -> bool:
    """Nef on the model: non-negative on listed curves, ``D^2 >= 0``, ``D.A >= 0``."""
    pc, sq, da = _nef_values(model, D)
    return all(v >= 0 for v in pc) and sq >= 0 and da >= 0


def is_ample(model: SurfaceModel, D) -> bool:
    pc, sq, da = _nef_values(model, D)
    return all(v > 0 for v in pc) and sq > 0 and da > 0


def asymptotic_cohomology(model: SurfaceModel, D) -> tuple[Fraction, Fraction, Fraction]:
    D = coerce_class(model, D)
    for sign in (1, -1):
        try:
            zd = zariski_decompose(model, sign * D)
        except NotPseudoEffective:
            continue
        n2 = model.square(zd.negative_class(model))
        p2 = model.square(zd.P)
        return (p2, -n2, Fraction(0)) if sign == 1 else (Fraction(0), -n2, p2)
    return Fraction(0), -model.square(D), Fraction(0)


def _big_decomposition(model, D) -> ZariskiDecomposition:
    try:
        zd = zariski_decompose(model, D)
    except NotPseudoEffective:
        raise NotBig("class is not pseudo-effective") from None
    if model.square(zd.P) <= 0:
        raise NotBig("class has volume 0")
    return zd


def null_curves(model: SurfaceModel, P) -> frozenset[str]:
    """Listed curves orthogonal to P."""
    P = coerce_class(model, P)
    return frozenset(c.name for c, v in zip(model.curves, model.pairings(P)) if v == 0)


def base_locus(model: SurfaceModel, D, kind: str = "restricted") -> BaseLocus:
    if kind not in ("restricted", "augmented"):
        raise ValueError(f"unknown base locus kind {kind!r}")
    zd = _big_decomposition(model, D)
    curves = frozenset(zd.N)
    if kind == "augmented":
        curves = curves | null_curves(model, zd.P)
    return BaseLocus(curves, kind, conditional=not model.complete)


def asymptotic_multiplicity(model: SurfaceModel, D, x: PointProfile | str) -> Fraction:
    if isinstance(x, str):
        x = model.point(x)
    zd = _big_decomposition(model, D)
    return sum((a * x.multiplicity(name) for name, a in zd.N.items()), Fraction(0))
