"""Shared graph builders for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from forestcolor.constructions import cycle, dodecahedron, grid_subdivided, random_sparse
from forestcolor.graph import Params, WeightedMultigraph
from forestcolor.potential import check_hypothesis

ENGINE_PARAMS = [Params(0, 2), Params(0, 3), Params(1, 4), Params(2, 6), Params(3, 8)]


def hub_ring(hubs: int, seed: int) -> WeightedMultigraph:
    """Weightless degree-3 vertices on one cycle, each also joined to a hub.

    Under (2, 6) every hub has degree 4 and capacities (3, 3), so it is
    doubly constrained, while the ring vertices are triple-three with two
    loose ring neighbors.  The whole graph has potential exactly 0 and no
    small subset is tight, which is what lets the last local case fire.
    """
    p = Params(2, 6)
    rng = random.Random(seed)
    nt = 4 * hubs
    order = list(range(nt))
    rng.shuffle(order)
    edges = [(order[k], order[(k + 1) % nt]) for k in range(nt)]
    slots = [h for h in range(hubs) for _ in range(4)]
    rng.shuffle(slots)
    edges += [(t, nt + slots[t]) for t in range(nt)]
    weights = {v: (0, 0) for v in range(nt)}
    weights.update({nt + h: (0, 4) for h in range(hubs)})
    return WeightedMultigraph.build(p, weights, edges)


def random_weighted(rng: random.Random, params: Params, n: int, m: int) -> WeightedMultigraph:
    """Arbitrary weights and up to ``m`` edge units on ``n`` vertices."""
    weights = {v: (rng.randint(0, params.d1 + 1), rng.randint(0, params.d2 + 1)) for v in range(n)}
    mult: dict[tuple[int, int], int] = {}
    for _ in range(m if n > 1 else 0):
        u, v = sorted(rng.sample(range(n), 2))
        if mult.get((u, v), 0) < 2:
            mult[(u, v)] = mult.get((u, v), 0) + 1
    return WeightedMultigraph.build(params, weights, [(u, v, k) for (u, v), k in mult.items()])


@lru_cache(maxsize=None)
def engine_corpus() -> tuple[tuple[str, WeightedMultigraph], ...]:
    """Hypothesis-ok graphs for end-to-end runs, largest at 500 vertices."""
    out: list[tuple[str, WeightedMultigraph]] = []
    sizes = [12, 25, 40, 60, 100, 150, 250, 500]
    for p in ENGINE_PARAMS:
        for k, n in enumerate(sizes):
            if n > 150 and p != Params(2, 6):
                continue
            out.append((f"random{p.d1},{p.d2}:n={n}", random_sparse(p, n, seed=1000 * p.d2 + k)))
        for n in (5, 40):
            out.append((f"cycle{p.d1},{p.d2}:n={n}", cycle(p, n)))
        out.append((f"dodecahedron{p.d1},{p.d2}", dodecahedron(p)))
    q = Params(2, 6)
    out.append(("grid(4,4,1)", grid_subdivided(q, 4, 4, 1)))
    out.append(("grid(6,6,2)", grid_subdivided(q, 6, 6, 2)))
    out.append(("grid(10,10,0)", grid_subdivided(q, 10, 10, 0)))
    for hubs in (2, 5, 20):
        out.append((f"hub_ring:{hubs}", hub_ring(hubs, seed=hubs)))
    for k in range(4):
        out.append((f"random2,6:parallel{k}", random_sparse(q, 30, seed=77 + k, parallel_prob=0.3)))
    return tuple((name, g) for name, g in out if check_hypothesis(g).ok)
