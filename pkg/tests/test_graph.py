from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import random_weighted
from forestcolor.graph import (
    GraphError,
    Params,
    WeightedMultigraph,
    girth,
    potential,
    profile,
    subset_potential,
    vertex_potential,
)


@pytest.mark.parametrize(
    "d1, d2, alpha, beta, scale",
    [(0, 2, Fraction(2, 3), Fraction(1, 3), 6), (1, 4, Fraction(2, 5), Fraction(1, 5), 15), (2, 6, Fraction(2, 7), Fraction(1, 7), 28)],
)
def test_params_constants(d1, d2, alpha, beta, scale):
    p = Params(d1, d2)
    assert (p.alpha, p.beta, p.scale) == (alpha, beta, scale)
    assert p.unscale(p.alpha_scaled) == alpha
    assert p.unscale(p.beta_scaled) == beta


def test_params_reject_illegal():
    with pytest.raises(GraphError):
        Params(-1, 3)
    with pytest.raises(GraphError):
        Params(0, 1)


def test_regime():
    assert Params(2, 6).regime_ok and Params(0, 2).regime_ok
    assert not Params(2, 5).regime_ok and not Params(1, 3).regime_ok


@pytest.mark.parametrize("p", [Params(0, 2), Params(1, 4), Params(2, 6), Params(3, 3)])
def test_vertex_potential_examples(p):
    g = WeightedMultigraph.build(p, {0: (0, 0), 1: (p.d1, p.d2 + 1), 2: (p.d1 + 1, p.d2), 3: (p.d1 + 1, p.d2 + 1)})
    assert p.unscale(vertex_potential(g, 0)) == 2 - p.alpha
    assert p.unscale(vertex_potential(g, 1)) == p.alpha - p.beta  # c = (1, 0)
    assert vertex_potential(g, 2) == 0  # c = (0, 1)
    assert vertex_potential(g, 3) == -p.beta_scaled  # c = (0, 0)


def test_subset_potential_examples():
    p = Params(0, 2)
    k2 = WeightedMultigraph.build(p, range(2), [(0, 1)])
    assert subset_potential(k2, []) == 0
    assert potential(k2) == 10
    assert p.unscale(potential(k2)) == Fraction(5, 3)
    doubled = WeightedMultigraph.build(p, range(2), [(0, 1, 2)])
    assert potential(doubled) == 2 * 8 - 2 * 6


def test_profile_examples():
    p = Params(2, 6)
    path = WeightedMultigraph.build(Params(0, 2), {0: (0, 0), 1: (0, 2), 2: (0, 0)}, [(0, 1), (1, 2)])
    # middle vertex: degree 2, c1 = 1, c2 = 1
    assert profile(path, 1).doubly_constrained
    star = WeightedMultigraph.build(p, range(4), [(0, 1), (0, 2), (0, 3)])
    pr = profile(star, 0)
    assert pr.degree == 3 and pr.c1 == 3 and pr.is_slack(1)
    assert pr.triple_three and pr.three_two_two
    w = WeightedMultigraph.build(p, {0: (0, 4), 1: (0, 0), 2: (0, 0), 3: (0, 0)}, [(0, 1), (0, 2), (0, 3)])
    assert w.capacity(0, 2) == 3
    assert profile(w, 0).triple_three


def test_profile_classes_are_exclusive():
    rng = random.Random(5)
    for _ in range(300):
        p = rng.choice([Params(0, 2), Params(1, 4), Params(2, 6)])
        g = random_weighted(rng, p, rng.randint(1, 7), rng.randint(0, 12))
        for v in g.vertices:
            pr = profile(g, v)
            for i in (1, 2):
                assert [pr.is_null(i), pr.is_slack(i), pr.is_constrained(i)].count(True) == 1
            assert pr.doubly_constrained == (pr.is_constrained(1) and pr.is_constrained(2))
            assert pr.doubly_constrained == all(1 <= pr.capacity(i) < pr.degree for i in (1, 2))


def test_girth_examples():
    p = Params(0, 2)
    assert girth(WeightedMultigraph.build(p, range(4), [(0, 1), (1, 2), (1, 3)])) == float("inf")
    assert girth(WeightedMultigraph.build(p, range(5), [(k, (k + 1) % 5) for k in range(5)])) == 5
    assert girth(WeightedMultigraph.build(p, range(6), [(k, (k + 1) % 6) for k in range(6)] + [(0, 3, 2)])) == 2
    assert girth(WeightedMultigraph.build(p, range(4), [(0, 1), (1, 2), (2, 0), (2, 3)])) == 3


def test_build_normalizes_with_warnings():
    p = Params(0, 2)
    g = WeightedMultigraph.build(p, {0: (5, 0), 1: (0, 0)}, [(0, 1, 3)])
    assert g.weights(0) == (1, 0)
    assert g.multiplicity(0, 1) == 2
    assert len(g.warnings) == 2


@pytest.mark.parametrize(
    "vertices, edges",
    [({0: (0, 0)}, [(0, 0)]), ({0: (0, 0)}, [(0, 1)]), ({0: (-1, 0)}, []), ({0: (0, 0), 1: (0, 0)}, [(0, 1, 0)])],
)
def test_build_rejects(vertices, edges):
    with pytest.raises(GraphError):
        WeightedMultigraph.build(Params(0, 2), vertices, edges)


def test_mutation_helpers_are_persistent():
    p = Params(1, 4)
    g = WeightedMultigraph.build(p, range(4), [(0, 1), (0, 2), (0, 3, 2)])
    z = g.set_capacity_zero(0, 1)
    assert z.capacity(0, 1) == 0 and g.capacity(0, 1) == p.d1 + 1
    b = g.bump_weight(0, 2)
    assert vertex_potential(b, 0) - vertex_potential(g, 0) == -p.beta_scaled
    d = g.delete_vertex(0)
    assert d.m == g.m - g.degree(0) and d.n == 3
    a = g.add_edge(1, 2).add_vertex(9, 1, 1)
    assert a.multiplicity(1, 2) == 1 and a.weights(9) == (1, 1) and g.multiplicity(1, 2) == 0
    assert g.add_edge(0, 3).multiplicity(0, 3) == 2
    with pytest.raises(GraphError):
        g.bump_weight(0, 1, 5)
    assert g.bump_weight(0, 1, 5, saturate=True).capacity(0, 1) == 0


def _brute_submodular(g: WeightedMultigraph) -> bool:
    verts = g.vertices
    subsets = [frozenset(c) for r in range(len(verts) + 1) for c in itertools.combinations(verts, r)]
    pot = {s: subset_potential(g, s) for s in subsets}
    return all(pot[a] + pot[b] >= pot[a | b] + pot[a & b] for a in subsets for b in subsets)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_potential_is_submodular(seed):
    rng = random.Random(seed)
    g = random_weighted(rng, Params(1, 4), rng.randint(1, 5), rng.randint(0, 8))
    assert _brute_submodular(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_potential_matches_definition(seed):
    rng = random.Random(seed)
    p = rng.choice([Params(0, 2), Params(2, 6)])
    g = random_weighted(rng, p, rng.randint(1, 8), rng.randint(0, 14))
    s = [v for v in g.vertices if rng.random() < 0.5]
    exact = sum(p.alpha * g.capacity(v, 1) + p.beta * (g.capacity(v, 2) - 1) for v in s)
    exact -= sum(k for u, v, k in g.edges() if u in s and v in s)
    assert p.unscale(subset_potential(g, s)) == exact
