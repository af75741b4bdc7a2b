"""Exact arithmetic, lattice pairing and model validation."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, sqrt as mpsqrt

from nok.chambers import del_pezzo_model
from nok.core.linalg import congruence_diagonal, inverse, is_negative_definite, signature, solve
from nok.core.model import (
    DivisorClass, SurfaceModel, intersect, quadratic_roots, quadratic_smaller_root,
    require_valid, validate_model,
)
from nok.core.quadratic import QuadraticNumber, squarefree_decomposition
from nok.errors import DimensionMismatch, ModelError, RadicandMismatch

from conftest import load, rand_class

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13])


def _mp(q: QuadraticNumber):
    return mpf(q.a.numerator) / q.a.denominator + mpf(q.b.numerator) / q.b.denominator * mpsqrt(q.d)


# ---------------------------------------------------------------- quadratic numbers

def test_canonical_form():
    assert QuadraticNumber(1, 2, 12) == QuadraticNumber(1, 4, 3)
    assert QuadraticNumber(1, 3, 9) == QuadraticNumber(10)
    assert QuadraticNumber(Fraction(1, 2), 5, 0).b == 0
    assert QuadraticNumber.sqrt(8) == QuadraticNumber(0, 2, 2)
    assert QuadraticNumber.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert squarefree_decomposition(72) == (6, 2)


def test_parse_and_print():
    q = QuadraticNumber.parse("4/3 - 1/3*sqrt(7)")
    assert q == QuadraticNumber(Fraction(4, 3), Fraction(-1, 3), 7)
    assert QuadraticNumber.parse(str(q)) == q
    assert str(QuadraticNumber(Fraction(3, 2))) == "3/2"


@given(rationals, rationals, radicands)
def test_print_parse_round_trip(a, b, d):
    q = QuadraticNumber(a, b, d)
    assert QuadraticNumber.parse(str(q)) == q


@pytest.mark.parametrize("text", ["", "x", "2 3*sqrt(2)", "1+", "sqrt(x)", "1/0x"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        QuadraticNumber.parse(text)


def test_radicand_mixing_is_an_error():
    with pytest.raises(RadicandMismatch):
        QuadraticNumber.sqrt(2) + QuadraticNumber.sqrt(3)


@given(rationals, rationals, radicands)
def test_norm_identity(a, b, d):
    q = QuadraticNumber(a, b, d)
    assert q * q.conjugate() == a * a - b * b * d
    assert q.norm() == a * a - b * b * d


@settings(max_examples=400)
@given(rationals, rationals, rationals, rationals, radicands)
def test_comparison_matches_high_precision(a, b, c, e, d):
    mp.dps = 60
    x, y = QuadraticNumber(a, b, d), QuadraticNumber(c, e, d)
    fx, fy = _mp(x), _mp(y)
    if fx != fy:
        assert (x < y) == (fx < fy)
    assert (x == y) == (a == c and b == e)


@given(rationals, rationals, rationals, rationals, radicands)
def test_field_operations(a, b, c, e, d):
    x, y = QuadraticNumber(a, b, d), QuadraticNumber(c, e, d)
    assert (x + y) - y == x
    assert (x * y) == (y * x)
    if y != 0:
        assert (x / y) * y == x


# ---------------------------------------------------------------- roots

@pytest.mark.parametrize("coeffs, root", [
    ((1, -3, 2), QuadraticNumber(1)),
    ((6, -16, 6), QuadraticNumber(Fraction(4, 3), Fraction(-1, 3), 7)),
    ((1, 0, -2), QuadraticNumber(0, -1, 2)),
])
def test_smaller_root(coeffs, root):
    assert quadratic_smaller_root(*coeffs) == root


def test_smaller_root_errors():
    with pytest.raises(ValueError):
        quadratic_smaller_root(1, 0, 1)
    with pytest.raises(ValueError):
        quadratic_smaller_root(0, 1, 1)
    assert quadratic_roots(1, 0, 1) is None


@given(rationals.filter(bool), rationals, rationals)
def test_smaller_root_is_a_root(a, b, c):
    if b * b - 4 * a * c < 0:
        return
    r = quadratic_smaller_root(a, b, c)
    assert a * r * r + b * r + c == 0
    other = QuadraticNumber(-b / a) - r
    assert r <= other


# ---------------------------------------------------------------- linear algebra

def test_linalg_basics():
    m = [[2, 1], [1, 3]]
    assert solve(m, [1, 2]) == [Fraction(1, 5), Fraction(3, 5)]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    inv = inverse(m)
    assert [[sum(Fraction(m[i][k]) * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)] == [[1, 0], [0, 1]]
    assert signature([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == (1, 2, 0)
    assert signature([[1, 0], [0, 0]]) == (1, 0, 1)
    assert sorted(congruence_diagonal([[0, 1], [1, 0]])) [0] < 0
    assert is_negative_definite([[-1, 0], [0, -1]])
    assert not is_negative_definite([[-1, 1], [1, -1]])
    assert is_negative_definite([])


# ---------------------------------------------------------------- pairing

def test_intersect_examples():
    two = load("two_point_blowup")
    H, E1 = DivisorClass([1, 0, 0]), DivisorClass([0, 1, 0])
    assert intersect(two, H, H) == 1
    assert intersect(two, E1, E1) == -1
    assert intersect(two, H, E1) == 0
    one = load("one_point")
    assert intersect(one, DivisorClass([2, -1]), DivisorClass([1, -1])) == 1
    with pytest.raises(DimensionMismatch):
        intersect(one, DivisorClass([1, 0, 0]), DivisorClass([1, 0]))


def test_pairing_symmetric_bilinear(rng):
    for model in (del_pezzo_model(4), load("cxc_abelian")):
        for _ in range(200):
            a, b, c = (rand_class(rng, model, den=5) for _ in range(3))
            s = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            assert model.intersect(a, b) == model.intersect(b, a)
            assert model.intersect(a * s + b, c) == s * model.intersect(a, c) + model.intersect(b, c)


def test_hodge_index_consequence(rng):
    for model in (del_pezzo_model(3), load("cxc_abelian"), load("two_point_blowup")):
        A = model.ample_ref
        for _ in range(100):
            D = rand_class(rng, model)
            if model.square(D) <= 0 or model.intersect(D, A) <= 0:
                continue
            C = rand_class(rng, model)
            # project C to the orthogonal complement of D
            C = C * model.square(D) - D * model.intersect(D, C)
            if not C.is_zero():
                assert model.intersect(D, C) == 0
                assert model.square(C) < 0


# ---------------------------------------------------------------- validation

def test_validate_examples():
    rep = validate_model(del_pezzo_model(2))
    assert rep.valid and rep.signature[:2] == (1, 2)
    rep = validate_model(load("cxc_abelian"))
    assert rep.valid and rep.signature[:2] == (1, 2)
    bad = SurfaceModel("bad", ("A", "B"), [[1, 0], [0, 1]], None, DivisorClass([1, 0]))
    rep = validate_model(bad)
    assert not rep.valid and rep.signature[:2] == (2, 0)
    with pytest.raises(ModelError):
        require_valid(bad)


def test_validate_catches_bad_data():
    from nok.core.model import CurveRecord
    one = load("one_point")
    # non-symmetric gram
    m = SurfaceModel("x", ("H", "E"), [[1, 1], [0, -1]], None, DivisorClass([2, -1]))
    assert any("symmetric" in f for f in validate_model(m).failures)
    # adjunction violated: genus 1 declared on a line
    m = SurfaceModel("x", one.basis, one.gram, one.canonical, one.ample_ref,
                     (CurveRecord("L", DivisorClass([1, -1]), genus=1),))
    assert any("adjunction" in f for f in validate_model(m).failures)
    # ample reference not positive on a curve
    m = SurfaceModel("x", one.basis, one.gram, one.canonical, DivisorClass([1, 0]),
                     (CurveRecord("E", DivisorClass([0, 1]), genus=0),))
    assert not validate_model(m).valid
    # duplicate curve class
    m = SurfaceModel("x", one.basis, one.gram, one.canonical, one.ample_ref,
                     (CurveRecord("E", DivisorClass([0, 1])), CurveRecord("F", DivisorClass([0, 1]))))
    assert not validate_model(m).valid


def test_bundled_models_validate():
    from nok.cli.modelfile import bundled_names
    for name in bundled_names():
        assert validate_model(load(name)).valid, name
