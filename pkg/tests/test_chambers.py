"""Chamber labels, enumeration, clique counting and ray walks."""
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from nok import _kernels
from nok.chambers import (
    chamber_support, count_chambers, count_chambers_delpezzo, del_pezzo_model,
    dkms_ray, enumerate_chambers, minus_one_classes, nagata_ray, orthogonality_graph,
    ray_chamber_walk,
)
from nok.cli.export import chambers_csv, read_chambers_csv
from nok.core.linalg import is_negative_definite
from nok.core.model import DivisorClass
from nok.errors import NotBig, PreconditionError

from conftest import brute_force_minus_one, load, rand_big

TWO = load("two_point_blowup")
BACKENDS = _kernels.available_backends()


def test_chamber_support_examples():
    assert chamber_support(TWO, DivisorClass([3, -1, -1])).curves == ()
    assert chamber_support(TWO, DivisorClass([3, -2, -2])).curves == ("Gamma",)
    assert chamber_support(TWO, DivisorClass([4, 1, -1])).curves == ("E1",)
    with pytest.raises(NotBig):
        chamber_support(TWO, DivisorClass([1, -1, -1]))


def test_enumeration_examples():
    labels = {c.curves for c in enumerate_chambers(TWO)}
    assert labels == {(), ("E1",), ("E2",), ("E1", "E2"), ("Gamma",)}
    assert len(enumerate_chambers(del_pezzo_model(3))) == 18
    assert [c.curves for c in enumerate_chambers(load("one_point"))] == [(), ("E",)]


def test_enumerated_supports_are_negative_definite():
    for model in (del_pezzo_model(4), TWO, load("cusp_blowup")):
        for ch in enumerate_chambers(model):
            cls = [model.curve(n).cls for n in ch.curves]
            assert is_negative_definite([[model.intersect(a, b) for b in cls] for a in cls])
            assert not ch.indeterminate


def test_enumeration_realises_each_label(rng):
    """Each enumerated label is hit by some big class (the positive part plus its support)."""
    for model in (TWO, del_pezzo_model(3), load("cusp_blowup")):
        found = set()
        for _ in range(3000):
            found.add(chamber_support(model, rand_big(rng, model, -8, 8)).curves)
        assert found <= {c.curves for c in enumerate_chambers(model)}


@pytest.mark.parametrize("r, expected", [(1, 2), (2, 5), (3, 18), (4, 76), (5, 393), (6, 2764)])
def test_delpezzo_counts(r, expected):
    assert count_chambers_delpezzo(r) == expected


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_clique_count_matches_enumeration(r):
    model = del_pezzo_model(r)
    assert count_chambers(model) == len(enumerate_chambers(model))


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernels_against_networkx(backend, rng):
    for n, p in [(0, 0), (1, 0), (5, 1.0), (30, 0.3), (70, 0.5), (130, 0.15)]:
        g = nx.gnp_random_graph(n, p, seed=rng.randint(0, 10 ** 6))
        adj = nx.to_numpy_array(g, dtype=bool) if n else np.zeros((0, 0), dtype=bool)
        expected = 1 + sum(1 for _ in nx.enumerate_all_cliques(g))
        assert _kernels.count_cliques(_kernels.forward_bitsets(adj), backend) == expected


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba not installed")
@pytest.mark.parametrize("r", [5, 6, 7])
def test_backends_agree(r):
    _, adj = orthogonality_graph(del_pezzo_model(r))
    fwd = _kernels.forward_bitsets(adj)
    assert _kernels.count_cliques(fwd, "numba") == _kernels.count_cliques(fwd, "numpy")


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("NOK_DISABLE_NUMBA", "1")
    assert _kernels.default_backend() == "numpy"
    assert count_chambers_delpezzo(4) == 76


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.count_cliques(np.zeros((2, 1), dtype=np.uint64), "cuda")


# ---------------------------------------------------------------- (-1)-curves

@pytest.mark.parametrize("r, expected", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27),
                                         (7, 56), (8, 240)])
def test_minus_one_curve_counts(r, expected):
    model = del_pezzo_model(r)
    assert len(model.curves) == expected
    for c in model.curves:
        assert model.square(c.cls) == -1
        assert model.intersect(c.cls, model.canonical) == -1


@pytest.mark.parametrize("r", [6, 7, 8])
def test_degree_bound_closure(r):
    """Raising the degree bound to 12 finds nothing new."""
    oracle = brute_force_minus_one(r, 12)
    got = {(d,) + ms for d, ms in minus_one_classes(r)}
    assert got == oracle
    assert len(minus_one_classes(r, 12)) == len(minus_one_classes(r))


def test_delpezzo_range():
    with pytest.raises(PreconditionError):
        del_pezzo_model(9)


# ---------------------------------------------------------------- rays

def test_ray_examples():
    one = load("one_point")
    walk = ray_chamber_walk(one, DivisorClass([2, -1]), DivisorClass([1, -1]))
    assert [(w.start, w.end, w.support.curves) for w in walk] == [(0, 1, ()), (1, 2, ("E",))]
    walk = ray_chamber_walk(one, DivisorClass([2, -1]), -one.ample_ref, t_max=1)
    assert [(w.start, w.end, w.support.curves) for w in walk] == [(0, 1, ())]


def test_dkms_example_r4():
    model, D, G = dkms_ray(4)
    assert D == DivisorClass([11, -1, -2, -3, -4])
    walk = ray_chamber_walk(model, D, G, t_max=6)
    assert [w.support.curves for w in walk] == [
        (), ("E1",), ("E1", "E2"), ("E1", "E2", "E3"), ("E1", "E2", "E3", "E4")]
    assert [w.start for w in walk] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_nagata_and_dkms_rays(r):
    model, D, G = nagata_ray(r)
    assert len(ray_chamber_walk(model, D, G)) <= 2
    model, D, G = dkms_ray(r)
    assert len(ray_chamber_walk(model, D, G, t_max=r + 2)) == r + 1


def test_chamber_convexity(rng):
    for model in (TWO, del_pezzo_model(3)):
        for _ in range(150):
            a, b = rand_big(rng, model), rand_big(rng, model)
            if chamber_support(model, a) == chamber_support(model, b):
                mid = (a + b) * Fraction(1, 2)
                assert chamber_support(model, mid) == chamber_support(model, a)


def test_chamber_csv_round_trip(tmp_path):
    chs = enumerate_chambers(del_pezzo_model(3))
    text = chambers_csv(chs)
    assert text.splitlines()[0] == "support"
    assert read_chambers_csv(text) == [c.curves for c in chs]
