"""Blow-ups, infinitesimal polygons and Seshadri constants."""
from fractions import Fraction

import pytest

from nok.core.model import DivisorClass
from nok.core.quadratic import QuadraticNumber
from nok.errors import NotAmple, PreconditionError
from nok.infinitesimal import (
    LAMBDA_NOTE, SMALL_SESHADRI_BOUND, InvertedSimplex, blow_up, infinitesimal_polygon,
    lambda_region_check, largest_inverted_simplex, seshadri, seshadri_details,
    seshadri_upper_from_region, very_general_cap,
)
from nok.polygon import polygon_area
from nok.zariski import is_ample

from conftest import abelian_models, complete_models, load, rand_big

F = Fraction
P2 = load("p2")
CXC = load("cxc_abelian")
CUSP = load("cusp_blowup")
SQRT2 = QuadraticNumber.sqrt(2)


def test_blow_up_plane():
    bu = blow_up(P2, "generic")
    assert bu.model.rank == 2
    assert [c.name for c in bu.model.negative_curves] == [bu.exceptional]
    assert bu.model.square(bu.E) == -1
    assert bu.model.intersect(bu.pullback(DivisorClass([1])), bu.E) == 0
    assert bu.pushforward(bu.pullback(DivisorClass([5]))) == DivisorClass([5])


def test_blow_up_tangency_point():
    bu = blow_up(CUSP, "x")
    assert bu.model.rank == 3
    assert bu.model.curve("E").cls == DivisorClass([0, 1, -1])
    assert bu.proper_transform("C") == DivisorClass([3, -2, -1])
    assert bu.model.canonical == bu.pullback(CUSP.canonical) + bu.E
    assert {p.name for p in bu.model.points} >= {"tangent", "line"}
    assert bu.model.complete


def test_blow_up_abelian():
    bu = blow_up(CXC, "o")
    assert bu.model.rank == 4
    assert {c.name for c in bu.model.negative_curves} == {"E_o", "F1", "F2", "Delta"}
    bu = blow_up(CXC, "x")
    assert [c.name for c in bu.model.negative_curves] == ["E_x"]
    assert not bu.model.complete


def test_infinitesimal_examples():
    poly = infinitesimal_polygon(P2, DivisorClass([1]), "generic")
    assert poly.vertices() == InvertedSimplex(F(1)).vertices()
    assert largest_inverted_simplex(poly) == 1
    poly = infinitesimal_polygon(CXC, DivisorClass([1, 1, 0]), "x")
    assert poly.vertices() == [(0, 0), (SQRT2, 0), (SQRT2, SQRT2)]
    assert largest_inverted_simplex(poly) == SQRT2


def test_cusp_directions_pinned():
    D = DivisorClass([2, -1])
    got = {z: infinitesimal_polygon(CUSP, D, "x", z).vertices()
           for z in ("generic", "tangent", "line")}
    assert got == {
        "generic": [(0, 0), (3, 0), (1, 1)],
        "tangent": [(0, 0), (1, 0), (3, 1), (1, 1)],
        "line": [(0, 0), (1, 0), (3, 2), (1, 1)],
    }
    assert infinitesimal_polygon(CUSP, D, "x", "tangent").alpha(2) > 0


def test_seshadri_examples():
    assert seshadri(P2, DivisorClass([1]), "y") == 1
    assert seshadri(P2, DivisorClass([1]), "x") == 1
    for a1 in (4, 5, 9):
        L = DivisorClass([a1, 3, 2])
        assert seshadri(CXC, L, "o") == 5
    assert seshadri_details(CXC, DivisorClass([4, 3, 2]), "o").binding_curve == "F1"


def test_seshadri_needs_positivity():
    with pytest.raises(NotAmple):
        seshadri(load("one_point"), DivisorClass([1, -1]), "p")
    # nef and big but x on the augmented base locus
    with pytest.raises(PreconditionError):
        seshadri(load("one_point"), DivisorClass([1, 0]), "p")
    res = seshadri_details(load("one_point"), DivisorClass([1, 0]), "q")
    assert res.nef_only and res.value == 1


def test_region_examples():
    half = DivisorClass([F(5, 2), F(5, 2), 0])
    r = lambda_region_check(CXC, half, "x")
    assert r.region_ok and r.slice2 == 2
    assert r.note == LAMBDA_NOTE and "model-conditional" in r.verdict
    assert not lambda_region_check(P2, DivisorClass([1]), "y").region_ok
    assert lambda_region_check(CXC, DivisorClass([3, 3, 3]), "o").region_ok
    with pytest.raises(NotAmple):
        lambda_region_check(load("one_point"), DivisorClass([1, 0]), "q")


def test_small_seshadri_bound():
    B = DivisorClass([3, -2])
    assert not lambda_region_check(CUSP, B, "x", "line").region_ok
    assert seshadri_upper_from_region(CUSP, B, "x", "line") == SMALL_SESHADRI_BOUND
    assert seshadri(CUSP, B, "x") <= SMALL_SESHADRI_BOUND
    assert seshadri_upper_from_region(CXC, DivisorClass([2, 2, 0]), "x") is None
    with pytest.raises(PreconditionError):
        seshadri_upper_from_region(P2, DivisorClass([2]), "y")


def test_very_general_cap():
    k3 = load("degree2_k3")
    tri, inside = very_general_cap(k3, DivisorClass([1]), "x")
    assert tri == [(0, 0), (2, 0), (1, 1)] and inside
    assert very_general_cap(k3, DivisorClass([1]), "w") is None
    assert very_general_cap(P2, DivisorClass([1]), "x") is None


def _points(model):
    return ["generic"] + [p.name for p in model.points]


def test_containment_and_seshadri_oracle(rng):
    checked = 0
    for model in complete_models() + abelian_models():
        for _ in range(6):
            D = rand_big(rng, model)
            while not is_ample(model, D):
                D = D + model.ample_ref
            for x in _points(model):
                poly = infinitesimal_polygon(model, D, x)
                verts = poly.vertices()
                assert all(0 <= y <= t <= poly.mu for t, y in verts)
                assert all(poly.alpha(b) == 0 for b in poly.breakpoints())
                assert 2 * polygon_area(poly) == model.square(D)
                assert seshadri(model, D, x) == largest_inverted_simplex(poly)
                checked += 1
    assert checked > 100
