"""Zariski chambers: labels, enumeration, del Pezzo models and ray walks.

A big class lies in the chamber labelled by the support of its negative
part.  A set S of negative curves labels a chamber exactly when its Gram
matrix is negative definite: solving ``(A + sum l_i C_i).C_j = 0`` on S with
A ample gives a nef class P with ``Null(P) = S``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from . import _kernels
from ._walk import Number, walk
from .core.linalg import solve
from .core.model import CurveRecord, DivisorClass, SurfaceModel, coerce_class
from .core.quadratic import QuadraticNumber
from .errors import PreconditionError
from .zariski import _big_decomposition, is_ample, zariski_decompose

__all__ = [
    "ChamberSupport", "ChamberInterval", "chamber_support", "enumerate_chambers",
    "count_chambers", "count_chambers_delpezzo", "del_pezzo_model",
    "minus_one_classes", "ray_chamber_walk", "orthogonality_graph",
    "dkms_ray", "nagata_ray", "rational_between",
]

_RETRIES = 3


@dataclass(frozen=True, order=True)
class ChamberSupport:
    curves: tuple[str, ...]
    indeterminate: bool = False

    def __str__(self):
        return "{" + ", ".join(self.curves) + "}"

    def __len__(self):
        return len(self.curves)


def chamber_support(model: SurfaceModel, D) -> ChamberSupport:
    zd = _big_decomposition(model, D)
    return ChamberSupport(tuple(sorted(zd.N)))


# ------------------------------------------------------------ enumeration

def _positive_part_on(model, S: list[int], A: DivisorClass):
    """``A + sum l_i C_i`` orthogonal to every curve of S, or None."""
    pair = model.curve_pairings
    ac = model.pairings(A)
    lam = solve([[pair[i][j] for j in S] for i in S], [-ac[j] for j in S])
    if lam is None:
        return None
    P = A
    for l, i in zip(lam, S):
        P = P + l * model.curves[i].cls
    return P


def _perturbed_ample(model, rng: random.Random, attempt: int) -> DivisorClass:
    A = model.ample_ref
    delta = Fraction(1, 97 * (attempt + 1))
    direction = DivisorClass(Fraction(rng.randint(1, 9), 10) for _ in range(model.rank))
    while True:
        cand = A + delta * direction
        if is_ample(model, cand):
            return cand
        delta /= 8


def _null_is(model, S: list[int], rng) -> bool | None:
    want = {model.curves[i].name for i in S}
    A = model.ample_ref
    for attempt in range(_RETRIES + 1):
        P = _positive_part_on(model, S, A)
        if P is not None:
            null = {c.name for c, v in zip(model.curves, model.pairings(P)) if v == 0}
            if null == want:
                return True
        A = _perturbed_ample(model, rng, attempt)
    return None


def _negative_definite_subsets(model) -> Iterable[list[int]]:
    """Every S whose Gram matrix is negative definite, by depth-first search.

    Negative definiteness is hereditary, so a branch is cut as soon as the
    new pivot of the incremental LDL^T factorisation of ``-Gram`` is <= 0.
    """
    pair = model.curve_pairings
    neg = [i for i in range(len(model.curves)) if pair[i][i] < 0]

    def extend(S, zs, pivots, start):
        yield S
        for pos in range(start, len(neg)):
            j = neg[pos]
            m = [-pair[i][j] for i in S]
            z = []
            for k in range(len(S)):
                z.append(m[k] - sum((zs[k][q] * z[q] / pivots[q] for q in range(k)),
                                    Fraction(0)))
            piv = -pair[j][j] - sum((zk * zk / pk for zk, pk in zip(z, pivots)), Fraction(0))
            if piv > 0:
                yield from extend(S + [j], zs + [z], pivots + [piv], pos + 1)

    yield from extend([], [], [], 0)


def enumerate_chambers(model: SurfaceModel, seed: int = 0) -> list[ChamberSupport]:
    """All chamber supports, the nef chamber ``{}`` included, canonically sorted."""
    if model.ample_ref is None:
        raise PreconditionError("model has no ample reference")
    rng = random.Random(seed)
    out = []
    for S in _negative_definite_subsets(model):
        ok = _null_is(model, S, rng)
        names = tuple(sorted(model.curves[i].name for i in S))
        out.append(ChamberSupport(names, indeterminate=ok is None))
    out.sort(key=lambda c: (len(c.curves), c.curves))
    return out


def orthogonality_graph(model: SurfaceModel) -> tuple[list[CurveRecord], np.ndarray]:
    neg = list(model.negative_curves)
    idx = [model.curve_position(c.name) for c in neg]
    pair = model.curve_pairings
    adj = np.array([[i != j and pair[i][j] == 0 for j in idx] for i in idx], dtype=bool)
    return neg, adj.reshape(len(idx), len(idx))


def count_chambers(model: SurfaceModel, backend: str | None = None) -> int:
    """Number of chambers.

    When every negative curve is a (-1)-curve, a set of them is negative
    definite exactly when the curves are pairwise disjoint, so the count is
    the number of cliques of the orthogonality graph.  Otherwise the general
    enumeration is used.
    """
    neg = model.negative_curves
    if all(model.square(c.cls) == -1 for c in neg):
        _, adj = orthogonality_graph(model)
        return _kernels.count_cliques(_kernels.forward_bitsets(adj), backend)
    return len(enumerate_chambers(model))


def count_chambers_delpezzo(r: int, backend: str | None = None) -> int:
    return count_chambers(del_pezzo_model(r), backend)


# ------------------------------------------------------------ del Pezzo

_DEGREE_BOUND = 6


def minus_one_classes(r: int, max_degree: int = _DEGREE_BOUND) -> list[tuple[int, tuple[int, ...]]]:
    """Classes ``dH - sum m_i E_i`` with C^2 = C.K = -1, d >= 1, m_i >= 0.

    The non-increasing multiplicity vectors are found first and then spread
    over all orderings.
    """
    out = []
    for d in range(1, max_degree + 1):
        for ms in combinations_with_replacement(range(d, -1, -1), r):
            if sum(ms) == 3 * d - 1 and sum(m * m for m in ms) == d * d + 1:
                for perm in multiset_permutations(list(ms)):
                    out.append((d, tuple(perm)))
    out.sort(key=lambda c: (c[0], [-m for m in c[1]]))
    return out


def _curve_name(d: int, ms: tuple[int, ...]) -> str:
    through = "".join(str(i + 1) for i, m in enumerate(ms) if m)
    if d == 1:
        return "L" + through
    if d == 2:
        return "Q" + through
    return f"C{d}_" + "".join(str(m) for m in ms)


@lru_cache(maxsize=None)
def del_pezzo_model(r: int) -> SurfaceModel:
    """The blow-up of the plane in r general points with all its (-1)-curves."""
    if not 1 <= r <= 8:
        raise PreconditionError("r must lie in 1..8")
    n = r + 1
    basis = ("H",) + tuple(f"E{i}" for i in range(1, n))
    gram = [[(1 if i == 0 else -1) if i == j else 0 for j in range(n)] for i in range(n)]
    K = DivisorClass([-3] + [1] * r)
    curves = [CurveRecord(f"E{i}", DivisorClass.basis_vector(n, i), 0, -1)
              for i in range(1, n)]
    for d, ms in minus_one_classes(r):
        curves.append(CurveRecord(_curve_name(d, ms), DivisorClass((d,) + tuple(-m for m in ms)),
                                  0, -1))
    return SurfaceModel(f"delpezzo{r}", basis, gram, K, -K, tuple(curves), (),
                        complete=True)


# ------------------------------------------------------------ rays

@dataclass(frozen=True)
class ChamberInterval:
    start: Number
    end: Number | None
    support: ChamberSupport


def rational_between(lo, hi) -> Fraction:
    """A rational strictly between lo < hi (hi may be irrational or None)."""
    lo = Fraction(lo) if not isinstance(lo, QuadraticNumber) else lo
    if hi is None:
        return Fraction(lo) + 1
    if not isinstance(hi, QuadraticNumber) or hi.is_rational:
        hi = hi.a if isinstance(hi, QuadraticNumber) else hi
        return (Fraction(lo) + Fraction(hi)) / 2
    # approximate hi from below by a dyadic rational
    k = 1
    while True:
        q = Fraction(int(float(hi) * 2 ** k) - 1, 2 ** k)
        if q > lo and q < hi:
            return (Fraction(lo) + q) / 2 if (Fraction(lo) + q) / 2 > lo else q
        k += 4
        if k > 400:
            raise ArithmeticError("could not separate interval endpoints")


def ray_chamber_walk(model: SurfaceModel, D, G, t_max=None) -> list[ChamberInterval]:
    """Chambers met by ``D - tG`` for ``t >= 0`` while the class stays big."""
    D, G = coerce_class(model, D), coerce_class(model, G)
    segments, _ = walk(model, D, G, 0, t_max)
    out: list[ChamberInterval] = []
    for seg in segments:
        sample = rational_between(seg.start, seg.end)
        check = tuple(sorted(zariski_decompose(model, D - sample * G).N))
        assert check == seg.support, (check, seg.support)
        if out and out[-1].support.curves == seg.support:
            prev = out.pop()
            out.append(ChamberInterval(prev.start, seg.end, prev.support))
        else:
            out.append(ChamberInterval(seg.start, seg.end, ChamberSupport(seg.support)))
    return out


def dkms_ray(r: int) -> tuple[SurfaceModel, DivisorClass, DivisorClass]:
    """``D = (r(r+1)/2 + 1)H - sum i E_i`` moved along ``+sum E_i``.

    Along ``D + t sum E_i`` the curve ``E_i`` enters the negative part at
    ``t = i``, so the ray crosses r+1 chambers.  Returned as ``(model, D, G)``
    with ``G = -sum E_i`` for :func:`ray_chamber_walk`.
    """
    model = del_pezzo_model(r)
    D = DivisorClass([r * (r + 1) // 2 + 1] + [-i for i in range(1, r + 1)])
    G = DivisorClass([0] + [-1] * r)
    return model, D, G


def nagata_ray(r: int) -> tuple[SurfaceModel, DivisorClass, DivisorClass]:
    """``H - t sum E_i`` on the del Pezzo model of degree 9 - r."""
    model = del_pezzo_model(r)
    return model, DivisorClass([1] + [0] * r), DivisorClass([0] + [1] * r)
