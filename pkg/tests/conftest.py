import os
import sys
import random
from fractions import Fraction

import pytest

from nok.chambers import del_pezzo_model
from nok.cli.modelfile import bundled_model
from nok.core.model import DivisorClass
from nok.errors import NotPseudoEffective
from nok.zariski import volume, zariski_decompose

SEED = int(os.environ.get("NOK_TEST_SEED", "20240611"))


@pytest.fixture
def rng():
    return random.Random(SEED)


def load(name):
    return bundled_model(name)


def rand_fraction(rng, lo=-6, hi=6, den=6):
    q = rng.randint(1, den)
    return Fraction(rng.randint(lo * q, hi * q), q)


def rand_class(rng, model, lo=-6, hi=6, den=1):
    return DivisorClass([rand_fraction(rng, lo, hi, den) for _ in range(model.rank)])


def rand_big(rng, model, lo=-6, hi=6, den=1, tries=10_000):
    """Rejection-sample a big class (pseudo-effective with positive volume)."""
    for _ in range(tries):
        D = rand_class(rng, model, lo, hi, den)
        try:
            zariski_decompose(model, D)
        except NotPseudoEffective:
            continue
        if volume(model, D) > 0:
            return D
    raise RuntimeError("no big class found")


def complete_models():
    """Complete models used by the property suites."""
    return [del_pezzo_model(r) for r in range(1, 5)] + [
        load(n) for n in ("one_point", "two_point_blowup", "cusp_blowup", "p2")]


def abelian_models():
    return [load("cxc_abelian"), load("product_abelian")]


def modeled_flags(model):
    """Every admissible flag built from listed curves and point profiles."""
    from nok.polygon import FlagSpec
    flags = []
    for c in model.curves:
        flags.append(FlagSpec(c.name))
        flags += [FlagSpec(c.name, p.name) for p in model.points if p.multiplicity(c.name) == 1]
    return flags


def brute_force_minus_one(r, max_d):
    """Brute force over every (d, m) with 0 <= m_i <= d."""
    out = set()
    for d in range(1, max_d + 1):
        def rec(prefix, left_sum, left_sq):
            if len(prefix) == r:
                if left_sum == 0 and left_sq == 0:
                    out.add((d,) + tuple(prefix))
                return
            rest = r - len(prefix) - 1
            for m in range(0, min(d, left_sum) + 1):
                if m * m > left_sq:
                    break
                # remaining entries are at most d each
                if left_sum - m > rest * d:
                    continue
                rec(prefix + [m], left_sum - m, left_sq - m * m)
        rec([], 3 * d - 1, d * d + 1)
    return out


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines collected by ``test_acceptance``."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(mod.line(k, *results[k]))
