import random

import pytest

from hfr.braid_core import BraidWord
from hfr.compile_braid import compile_diagram
from hfr.errors import BudgetExceededError
from hfr.euler import random_connected_braid
from hfr.generators import (
    Generator,
    default_budget,
    enumerate_generators,
    graded,
    iter_generators,
    permutation_sign,
    sign,
    torus_sign_prefactor,
)
from hfr.spinc import difference_class, homology_presentation

HOPF = BraidWord(2, (1, 1))


def test_permutation_sign():
    assert permutation_sign([]) == 1
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1
    with pytest.raises(ValueError):
        permutation_sign([0, 0])


def test_torus_sign_prefactor():
    assert torus_sign_prefactor(1, [0], [1]) == 1
    assert torus_sign_prefactor(2, [0, 1], [1, 1]) == -1
    assert torus_sign_prefactor(2, [1, 0], [1, -1]) == -1
    assert torus_sign_prefactor(3, [0, 1, 2], [-1, 1, 1]) == 1
    with pytest.raises(ValueError):
        torus_sign_prefactor(2, [0], [1, 1])


def test_hopf_generators_and_gradings():
    d = compile_diagram(HOPF)
    gens = graded(d)
    assert len(gens) == 4
    assert sorted(g.grading for g in gens) == [0, 0, 0, 1]
    assert all(g.generator.k == 0 for g in gens)


def test_unknot_single_positive_generator():
    gens = graded(compile_diagram(BraidWord(2, (1,))))
    assert [(g.generator, g.sign) for g in gens] == [(Generator((), ()), 1)]


def test_stratum_order():
    d = compile_diagram(BraidWord(3, (1, 1, -2, 1, -2, -2)))
    ks = [x.k for x in iter_generators(d)]
    assert ks == sorted(ks)
    assert max(ks) > 0


def test_generators_use_every_curve_once():
    rng = random.Random(4)
    for _ in range(15):
        d = compile_diagram(random_connected_braid(rng))
        for x in enumerate_generators(d):
            used = [c for cid in x.pairs for c in d.crossings[cid].curves]
            used += [curve for curve, _ in x.placements]
            assert sorted(used) == list(range(d.alpha_count))
            for curve, pid in x.placements:
                assert d.c_points[pid].curve == curve


def test_basepoint_point_swap():
    # Moving a circle's point from first to last on its component passes the
    # other n - 1 points there and flips the local sign: sgn changes by (-1)**n.
    # For odd n the two generators cancel, inside one Spin^c class.
    rng = random.Random(6)
    checked = odd = 0
    while checked < 10:
        d = compile_diagram(random_connected_braid(rng))
        circles = [a.index for a in d.alpha_curves if a.kind == "basepoint"]
        if not circles:
            continue
        checked += 1
        group = homology_presentation(d.seifert_matrix)
        for x in enumerate_generators(d):
            for curve, pid in x.placements:
                if curve not in circles:
                    continue
                comp = d.c_points[pid].component
                n = sum(1 for _, q in x.placements if d.c_points[q].component == comp)
                other = next(c.id for c in d.c_points_on(curve) if c.id != pid)
                y = Generator(x.pairs, tuple((c, other if c == curve else q) for c, q in x.placements))
                assert sign(y, d) == (-1) ** n * sign(x, d)
                assert difference_class(d, x, y, group) == difference_class(d, x, x, group)
                odd += n % 2
    assert odd > 0


def test_budget(monkeypatch):
    d = compile_diagram(BraidWord(3, (1, 1, 1, 2, 2, 1, 1, 2, 2, 2)))
    with pytest.raises(BudgetExceededError, match="budget"):
        enumerate_generators(d, budget=5)
    monkeypatch.setenv("HFR_BUDGET", "7")
    assert default_budget() == 7
    with pytest.raises(BudgetExceededError):
        enumerate_generators(d)


def test_enumeration_is_deterministic():
    d = compile_diagram(BraidWord(4, (1, 1, 2, -1, -3, 2, -3)))
    assert enumerate_generators(d) == enumerate_generators(d)
