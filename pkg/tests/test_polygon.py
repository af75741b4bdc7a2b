"""Newton-Okounkov polygons: worked examples and structural properties."""
from fractions import Fraction

import pytest

from nok.cli.export import polygon_csv, polygon_svg, read_polygon_csv
from nok.core.model import DivisorClass
from nok.core.quadratic import QuadraticNumber
from nok.errors import InadmissibleFlag, NotBig, PreconditionError
from nok.polygon import (
    FlagSpec, NOPolygon, clip_halfplane, contains_origin, largest_simplex, min_sum, no_polygon,
    polygon_area, restrict_above, shoelace_area, slice_length, standard_simplex, zariski_path,
)
from nok.zariski import asymptotic_multiplicity, is_ample, is_nef, volume

from conftest import abelian_models, complete_models, load, modeled_flags, rand_big

ONE = load("one_point")
TWO = load("two_point_blowup")
CUSP = load("cusp_blowup")
CXC = load("cxc_abelian")
SQRT7_MU = QuadraticNumber(Fraction(4, 3), Fraction(-1, 3), 7)
F = Fraction


def test_one_point_polygon():
    poly = no_polygon(ONE, DivisorClass([2, -1]), FlagSpec("L"))
    assert poly.vertices() == [(0, 0), (2, 0), (1, 1), (0, 1)]
    assert polygon_area(poly) == F(3, 2)
    assert contains_origin(poly)
    assert largest_simplex(poly) == 1
    assert slice_length(poly, 1) == (1, True)
    assert slice_length(poly, 2) == (0, True)
    assert slice_length(poly, 3) == (0, False)
    assert min_sum(poly) == 0


def test_one_point_path():
    path = zariski_path(ONE, DivisorClass([2, -1]), DivisorClass([1, -1]))
    assert path.nu == 0 and path.mu == 2
    assert [(s.start, s.end, s.support) for s in path.segments] == [(0, 1, ()), (1, 2, ("E",))]
    assert path.negative_part(F(3, 2)) == {"E": F(1, 2)}


def test_cusp_example():
    D, C = DivisorClass([1, 1]), DivisorClass([3, -2])
    path = zariski_path(CUSP, D, C)
    assert path.nu == 0 and path.mu == F(1, 3)
    assert len(path.segments) == 1
    assert path.negative_part(F(1, 6)) == {"E": F(4, 3)}
    poly = no_polygon(CUSP, D, FlagSpec("C", "x"))
    assert poly.vertices() == [(0, 2), (F(1, 3), F(10, 3)), (0, 5)]
    assert poly.alpha(F(1, 5)) == 2 + F(4, 5) and poly.beta(F(1, 5)) == 5 - 1
    assert polygon_area(poly) == F(1, 2)
    assert min_sum(poly) == 2
    assert asymptotic_multiplicity(CUSP, D, "x") == 1
    assert not contains_origin(poly)


def test_abelian_example():
    D = DivisorClass([3, 1, 0])
    path = zariski_path(CXC, D, CXC.ample_ref)
    assert path.mu == SQRT7_MU
    assert all(not s.support for s in path.segments)
    poly = no_polygon(CXC, D, FlagSpec(CXC.ample_ref))
    assert poly.mu == SQRT7_MU
    assert poly.beta(0) == 8 and poly.beta(F(1, 4)) == F(13, 2)
    assert slice_length(poly, SQRT7_MU).length == QuadraticNumber(0, 2, 7)
    assert polygon_area(poly) == 3
    assert poly.radicand == 7


def test_two_point_flags():
    D = DivisorClass([3, -2, -2])
    poly = no_polygon(TWO, D, FlagSpec("Gamma", "y"))
    assert poly.vertices() == [(1, 0), (3, 0), (2, 1)]
    assert not contains_origin(poly)
    assert min_sum(poly) == 1
    assert largest_simplex(poly) == 0


def test_largest_simplex_standard():
    assert largest_simplex(standard_simplex()) == 1
    assert largest_simplex(standard_simplex(F(5, 2))) == F(5, 2)


def test_restrict_above():
    D, flag = DivisorClass([2, -1]), FlagSpec("L")
    poly = no_polygon(ONE, D, flag)
    assert restrict_above(poly, 1, ONE, D, flag).vertices() == [(1, 0), (2, 0), (1, 1)]
    assert restrict_above(poly, 0, ONE, D, flag).vertices() == poly.vertices()
    with pytest.raises(PreconditionError):
        restrict_above(poly, 2, ONE, D, flag)
    A = DivisorClass([3, 1, 0])
    abel = no_polygon(CXC, A, FlagSpec(CXC.ample_ref))
    part = restrict_above(abel, F(1, 4), CXC, A, FlagSpec(CXC.ample_ref))
    assert part.mu == abel.mu and part.beta(F(1, 3)) == 8 - 2


def test_inadmissible_flags():
    D = DivisorClass([3, -2, -2])
    with pytest.raises(InadmissibleFlag):
        no_polygon(TWO, D, FlagSpec("E1", "y"))
    with pytest.raises(InadmissibleFlag):
        no_polygon(TWO, D, FlagSpec("Nope"))
    with pytest.raises(InadmissibleFlag):
        no_polygon(TWO, D, FlagSpec(DivisorClass([0, 0, 0])))
    with pytest.raises(NotBig):
        no_polygon(TWO, DivisorClass([1, -1, -1]), FlagSpec("E1"))


def test_clip_halfplane():
    sq = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert clip_halfplane(sq, 1, 0, -1) == [(1, 0), (2, 0), (2, 2), (1, 2)]
    assert shoelace_area(clip_halfplane(sq, -1, -1, 2)) == 2
    assert clip_halfplane(sq, 1, 0, -5) == []


def test_from_vertices_round_trip():
    for verts in ([(0, 0), (2, 0), (1, 1), (0, 1)], [(0, 2), (F(1, 3), F(10, 3)), (0, 5)],
                  [(1, 0), (2, 0), (3, 1), (2, 1)]):
        poly = NOPolygon.from_vertices(verts)
        assert poly.vertices() == verts


# ---------------------------------------------------------------- properties

def _cases(rng, n):
    models = complete_models() + abelian_models()
    for i in range(n):
        model = models[i % len(models)]
        yield model, rand_big(rng, model)


def test_area_law_and_vertex_bound(rng):
    for model, D in _cases(rng, 60):
        for flag in modeled_flags(model):
            poly = no_polygon(model, D, flag)
            assert 2 * polygon_area(poly) == volume(model, D)
            assert len(poly.vertices()) <= 2 * model.rank + 2
            assert all(not isinstance(b, QuadraticNumber) or b.is_rational
                       for b in poly.breakpoints()[:-1])


def test_nef_and_ample_criteria(rng):
    for model, D in _cases(rng, 60):
        polys = [no_polygon(model, D, f) for f in modeled_flags(model)]
        assert is_nef(model, D) == all(contains_origin(p) for p in polys)
        if is_ample(model, D):
            assert all(largest_simplex(p) > 0 for p in polys)


def test_min_sum_bounds_multiplicity(rng):
    for model, D in _cases(rng, 40):
        for flag in modeled_flags(model):
            if flag.point == "generic":
                continue
            poly = no_polygon(model, D, flag)
            assert min_sum(poly) >= asymptotic_multiplicity(model, D, flag.point)


def test_nested_bodies(rng):
    for model, D in _cases(rng, 40):
        bigger = D + model.ample_ref * F(1, 10)
        for flag in modeled_flags(model):
            outer = no_polygon(model, bigger, flag)
            assert all(outer.contains(t, y) for t, y in no_polygon(model, D, flag).vertices())


def test_csv_round_trip(rng, tmp_path):
    cases = [(CXC, DivisorClass([3, 1, 0]), FlagSpec(CXC.ample_ref))]
    cases += [(m, D, f) for m, D in _cases(rng, 20) for f in modeled_flags(m)[:2]]
    for model, D, flag in cases:
        poly = no_polygon(model, D, flag)
        again = read_polygon_csv(polygon_csv(poly))
        assert again.vertices() == poly.vertices()
        assert polygon_area(again) == polygon_area(poly)
    svg = polygon_svg(no_polygon(ONE, DivisorClass([2, -1]), FlagSpec("L")))
    assert svg.startswith("<svg") and "(3/2" not in svg and "(1, 1)" in svg
