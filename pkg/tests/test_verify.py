from __future__ import annotations

import itertools
import random

import pytest

from _corpus import random_weighted
from forestcolor.constructions import attach_flag, cycle, path, seed
from forestcolor.graph import Params, SizeGuardError, WeightedMultigraph
from forestcolor.verify import (
    all_desired_colorings,
    brute_force_color,
    is_critical,
    verify_coloring,
    weakenings,
)


def test_edge_in_class_two_is_fine():
    g = path(Params(0, 2), 2)
    assert verify_coloring(g, {0: 2, 1: 2}).ok


def test_doubled_edge_is_a_cycle():
    g = WeightedMultigraph.build(Params(0, 2), range(2), [(0, 1, 2)])
    verdict = verify_coloring(g, {0: 2, 1: 2})
    assert not verdict.ok
    assert [v.kind for v in verdict.violations] == ["cycle"]
    assert verify_coloring(g, {0: 1, 1: 2}).ok


def test_degree_budget_counts_weight():
    p = Params(0, 2)
    g = WeightedMultigraph.build(p, {0: (0, 2), 1: (0, 0)}, [(0, 1)])
    verdict = verify_coloring(g, {0: 2, 1: 2})
    assert [(v.kind, v.vertices) for v in verdict.violations] == [("degree_budget", (0,))]


def test_cycle_violation_reports_the_cycle():
    g = cycle(Params(2, 6), 5)
    verdict = verify_coloring(g, {v: 2 for v in g.vertices})
    (viol,) = verdict.violations
    assert viol.kind == "cycle" and sorted(viol.vertices) == list(range(5))


def test_incomplete_coloring_is_an_error():
    g = path(Params(0, 2), 2)
    with pytest.raises(ValueError):
        verify_coloring(g, {0: 1})
    with pytest.raises(ValueError):
        verify_coloring(g, {0: 1, 1: 3})


def test_brute_force_examples():
    for p in (Params(0, 2), Params(1, 4)):
        assert brute_force_color(seed(p)) is None
    c5 = cycle(Params(0, 2), 5)
    col = brute_force_color(c5)
    assert col is not None and verify_coloring(c5, col).ok
    star = WeightedMultigraph.build(Params(0, 2), range(7), [(0, k) for k in range(1, 7)])
    assert verify_coloring(star, brute_force_color(star)).ok


def _naive(g: WeightedMultigraph) -> list[dict[int, int]]:
    verts = g.vertices
    out = []
    for classes in itertools.product((1, 2), repeat=len(verts)):
        col = dict(zip(verts, classes))
        if verify_coloring(g, col).ok:
            out.append(col)
    return out


def test_enumeration_matches_naive_search():
    rng = random.Random(8)
    for _ in range(150):
        p = rng.choice([Params(0, 2), Params(1, 4), Params(2, 6)])
        g = random_weighted(rng, p, rng.randint(1, 8), rng.randint(0, 14))
        assert list(all_desired_colorings(g)) == _naive(g)


def test_critical_examples():
    p = Params(0, 2)
    assert is_critical(seed(p))
    assert not is_critical(path(p, 2))
    flagged = attach_flag([(seed(p), 0)], [0, 0])
    assert is_critical(flagged)


def test_weakenings_cover_each_step():
    p = Params(0, 2)
    g = WeightedMultigraph.build(p, {0: (1, 0), 1: (0, 2)}, [(0, 1, 2)])
    steps = list(weakenings(g))
    # one edge unit, two deletions, two weight decrements
    assert len(steps) == 5
    assert any(h.multiplicity(0, 1) == 1 for h in steps)


def test_size_guards():
    big = path(Params(0, 2), 23)
    with pytest.raises(SizeGuardError):
        brute_force_color(big)
    with pytest.raises(SizeGuardError):
        is_critical(path(Params(0, 2), 17))
