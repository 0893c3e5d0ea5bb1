"""Gadgets that extend sharp critical graphs, and corpus generators.

Fresh vertices always receive ids above the host's current maximum id, in
the order they are created.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterator, Sequence

from .graph import GraphError, Params, WeightedMultigraph
from .potential import SubsetMinimizer, check_strict_sparsity


class ConstructionError(ValueError):
    pass


def seed(params: Params) -> WeightedMultigraph:
    """The isolated vertex with both capacities zero, the smallest sharp critical graph."""
    return WeightedMultigraph.build(params, {0: (params.d1 + 1, params.d2 + 1)})


def _merge(g: WeightedMultigraph, weights: dict[int, tuple[int, int]], edges: list[tuple[int, int, int]]) -> WeightedMultigraph:
    all_weights = {v: g.weights(v) for v in g.vertices}
    all_weights.update(weights)
    return WeightedMultigraph.build(g.params, all_weights, list(g.edges()) + edges)


def disjoint_union(graphs: Sequence[WeightedMultigraph]) -> tuple[WeightedMultigraph, list[int]]:
    """Union of graphs sharing params; returns the id offset applied to each.

    The first graph keeps its ids and each later one is shifted above the
    running maximum.
    """
    if not graphs:
        raise ConstructionError("disjoint_union needs at least one graph")
    params = graphs[0].params
    weights: dict[int, tuple[int, int]] = {}
    edges: list[tuple[int, int, int]] = []
    offsets = []
    top = -1
    for k, h in enumerate(graphs):
        if h.params != params:
            raise ConstructionError("all parts must share the same parameters")
        off = 0 if k == 0 else top + 1 - min(h.vertices, default=0)
        offsets.append(off)
        for v in h.vertices:
            weights[v + off] = h.weights(v)
        edges.extend((u + off, v + off, mult) for u, v, mult in h.edges())
        top = max(top, h.max_id() + off)
    return WeightedMultigraph.build(params, weights, edges), offsets


def attach_pendant_host(g: WeightedMultigraph, v: int) -> WeightedMultigraph:
    """Decrement ``W1(v)`` and hang a leaf ``v'`` with ``W1 = 0`` and ``c2 = 0``."""
    if v not in g:
        raise ConstructionError(f"vertex {v} is not in the graph")
    w1, w2 = g.weights(v)
    if w1 == 0:
        raise ConstructionError(f"pendant host needs W1({v}) > 0")
    leaf = g.max_id() + 1
    return _merge(g, {v: (w1 - 1, w2), leaf: (0, g.params.d2 + 1)}, [(v, leaf, 1)])


def attach_flag(
    parts: Sequence[tuple[WeightedMultigraph, int]], assignment: Sequence[int]
) -> WeightedMultigraph:
    """Join sharp parts through a fresh weightless star.

    ``parts`` lists ``(G_i, v_i)``; ``assignment`` gives, for each star vertex
    ``u_1..u_{d1+2}``, the index of the part whose ``v_i`` it attaches to.
    The last star vertex is the center.  Every ``W2(v_i)`` drops by one.
    """
    if not parts:
        raise ConstructionError("a flag needs at least one part")
    params = parts[0][0].params
    if len(parts) > params.d1 + 2:
        raise ConstructionError(f"at most d1 + 2 = {params.d1 + 2} parts are allowed")
    if len(assignment) != params.d1 + 2:
        raise ConstructionError(f"assignment must have length d1 + 2 = {params.d1 + 2}")
    if any(not 0 <= k < len(parts) for k in assignment):
        raise ConstructionError("assignment refers to a missing part")
    if set(assignment) != set(range(len(parts))):
        raise ConstructionError("every part must be chosen at least once")
    for h, v in parts:
        if v not in h:
            raise ConstructionError(f"vertex {v} is not in its part")
        if h.weight(v, 2) == 0:
            raise ConstructionError(f"flag needs W2({v}) > 0")

    union, offsets = disjoint_union([h for h, _ in parts])
    anchors = [v + off for (_, v), off in zip(parts, offsets)]
    start = union.max_id() + 1
    star = list(range(start, start + params.d1 + 2))
    center = star[-1]
    weights = {u: (0, 0) for u in star}
    for a in anchors:
        w1, w2 = union.weights(a)
        weights[a] = (w1, w2 - 1)
    edges = [(u, center, 1) for u in star[:-1]]
    edges += [(anchors[k], u, 1) for k, u in zip(assignment, star)]
    return _merge(union, weights, edges)


def attach_null_leaf(g: WeightedMultigraph, u: int, i: int) -> WeightedMultigraph:
    """Reset ``W_i(u)`` to zero and hang a leaf with ``c_i = 1``, ``c_{3-i} = 0``."""
    if i not in (1, 2):
        raise ConstructionError("color index must be 1 or 2")
    if u not in g:
        raise ConstructionError(f"vertex {u} is not in the graph")
    if g.capacity(u, i) != 0:
        raise ConstructionError(f"null leaf needs c{i}({u}) = 0")
    p = g.params
    w = list(g.weights(u))
    w[i - 1] = 0
    leaf_w = [0, 0]
    leaf_w[i - 1] = p.capacity_bound(i) - 1
    leaf_w[2 - i] = p.capacity_bound(3 - i)
    leaf = g.max_id() + 1
    return _merge(g, {u: (w[0], w[1]), leaf: (leaf_w[0], leaf_w[1])}, [(u, leaf, 1)])


@dataclass(frozen=True)
class Pennon:
    graph: WeightedMultigraph
    x_star: int
    xs: tuple[int, ...]
    y_star: int
    ys: tuple[int, ...]

    @property
    def x_layer(self) -> tuple[int, ...]:
        return (self.x_star, *self.xs)


def attach_double_pennon_detail(g: WeightedMultigraph, u: int) -> Pennon:
    if u not in g:
        raise ConstructionError(f"vertex {u} is not in the graph")
    d2 = g.params.d2
    base = g.max_id() + 1
    x_star, y_star = base, base + d2 + 1
    xs = tuple(range(base + 1, base + d2 + 1))
    ys = tuple(range(y_star + 1, y_star + d2 + 1))
    weights = {v: (0, 0) for v in (x_star, *xs, y_star, *ys)}
    edges = [(u, x_star, 1)]
    for x in xs:
        edges += [(x_star, x, 1), (u, x, 1)]
    edges.append((x_star, y_star, 1))
    for y in ys:
        edges += [(y_star, y, 1), (x_star, y, 1)]
    return Pennon(_merge(g, weights, edges), x_star, xs, y_star, ys)


def attach_double_pennon(g: WeightedMultigraph, u: int) -> WeightedMultigraph:
    """Attach the ``2(d2 + 1)``-vertex gadget at ``u``."""
    return attach_double_pennon_detail(g, u).graph


# -- families of sharp graphs --------------------------------------------


@dataclass(frozen=True)
class Built:
    graph: WeightedMultigraph
    steps: tuple[str, ...]


def _moves(b: Built) -> Iterator[Built]:
    g = b.graph
    p = g.params
    for v in g.vertices:
        if g.weight(v, 1) > 0:
            yield Built(attach_pendant_host(g, v), b.steps + (f"pendant-host({v})",))
    for v in g.vertices:
        for i in (1, 2):
            if g.capacity(v, i) == 0:
                yield Built(attach_null_leaf(g, v, i), b.steps + (f"null-leaf({v},{i})",))
    for v in g.vertices:
        if g.weight(v, 2) == 0:
            continue
        # extra parts are fresh seeds; the first star vertices go to v
        for ell in range(1, p.d1 + 3):
            parts = [(g, v)] + [(seed(p), 0)] * (ell - 1)
            assignment = [0] * (p.d1 + 2 - (ell - 1)) + list(range(1, ell))
            yield Built(attach_flag(parts, assignment), b.steps + (f"flag({v},parts={ell})",))


def sharp_family(params: Params, max_steps: int = 3) -> list[Built]:
    """Every graph reachable from the seed by at most ``max_steps`` gadget moves.

    Flags use the host plus up to ``d1 + 1`` extra seed parts.
    """
    frontier = [Built(seed(params), ())]
    out = list(frontier)
    for _ in range(max_steps):
        frontier = [nxt for b in frontier for nxt in _moves(b)]
        out.extend(frontier)
    return out


# -- corpus generators ----------------------------------------------------


def _weightless(params: Params, n: int, edges) -> WeightedMultigraph:
    return WeightedMultigraph.build(params, range(n), edges)


def path(params: Params, n: int) -> WeightedMultigraph:
    if n < 1:
        raise ConstructionError("path needs at least one vertex")
    return _weightless(params, n, [(k, k + 1) for k in range(n - 1)])


def cycle(params: Params, n: int) -> WeightedMultigraph:
    if n < 3:
        raise ConstructionError("cycle needs at least three vertices")
    return _weightless(params, n, [(k, (k + 1) % n) for k in range(n)])


def star(params: Params, k: int) -> WeightedMultigraph:
    """``K_{1,k}`` with center 0."""
    if k < 1:
        raise ConstructionError("star needs at least one leaf")
    return _weightless(params, k + 1, [(0, j) for j in range(1, k + 1)])


def dodecahedron(params: Params) -> WeightedMultigraph:
    """The dodecahedral graph: 20 vertices, 30 edges, girth 5."""
    outer = [(k, (k + 1) % 5) for k in range(5)]
    spokes = [(k, 5 + 2 * k) for k in range(5)]
    middle = [(5 + k, 5 + (k + 1) % 10) for k in range(10)]
    inner_spokes = [(6 + 2 * k, 15 + k) for k in range(5)]
    inner = [(15 + k, 15 + (k + 1) % 5) for k in range(5)]
    return _weightless(params, 20, outer + spokes + middle + inner_spokes + inner)


def grid_subdivided(params: Params, rows: int, cols: int, s: int = 0) -> WeightedMultigraph:
    """A ``rows x cols`` grid with ``s`` extra vertices on every edge.

    With ``rows, cols >= 2`` the girth is ``4 * (s + 1)``.
    """
    if rows < 1 or cols < 1 or s < 0:
        raise ConstructionError("grid needs rows, cols >= 1 and s >= 0")
    corner = {(r, c): r * cols + c for r in range(rows) for c in range(cols)}
    nxt = rows * cols
    edges = []
    for (r, c), a in corner.items():
        for dr, dc in ((0, 1), (1, 0)):
            if (r + dr, c + dc) not in corner:
                continue
            chain = [a, *range(nxt, nxt + s), corner[(r + dr, c + dc)]]
            nxt += s
            edges.extend(zip(chain, chain[1:]))
    return _weightless(params, nxt, edges)


def hypothesis_bounds(params: Params) -> tuple[Fraction, Fraction]:
    """``(a, b)`` such that a weightless graph is (a, b)-strictly sparse
    exactly when every nonempty subgraph has potential above ``-beta``."""
    return 2 - params.alpha, -params.beta


def random_sparse(
    params: Params,
    n: int,
    seed: int,
    a: Fraction | int | str | None = None,
    b: Fraction | int | str | None = None,
    *,
    edges: int | None = None,
    parallel_prob: float = 0.0,
    attempts: int | None = None,
) -> WeightedMultigraph:
    """A weightless random multigraph that is (a, b)-strictly sparse.

    Random vertex pairs are proposed and an edge is kept only when the graph
    stays strictly sparse, checked exactly by one forced min cut.  ``a`` and
    ``b`` default to the bounds that make the result satisfy the coloring
    hypothesis.  Without a target ``edges`` count the graph grows until the
    attempt budget runs out or ``n + 50`` proposals in a row are rejected;
    with a target, missing it raises.
    """
    if n < 1:
        raise ConstructionError("random_sparse needs at least one vertex")
    da, db = hypothesis_bounds(params)
    a = Fraction(da if a is None else a)
    b = Fraction(db if b is None else b)
    q = a.denominator * b.denominator
    a_int, b_int = int(a * q), int(b * q)
    if a_int - b_int <= 0:
        raise ConstructionError("(a, b) admits no nonempty graph")
    rng = random.Random(seed)
    cap = max(0, ceil(a * n - b) - 1)
    target = cap if edges is None else edges
    if target > cap:
        raise ConstructionError(f"{target} edges cannot be (a, b)-strictly sparse on {n} vertices")
    budget = attempts if attempts is not None else 6 * (target + 1) + 100
    stall_limit = n + 50 if edges is None else budget
    chosen: dict[tuple[int, int], int] = {}
    count = 0
    tries = 0
    stall = 0
    while count < target and tries < budget and stall < stall_limit and n >= 2:
        tries += 1
        stall += 1
        u, v = sorted(rng.sample(range(n), 2))
        current = chosen.get((u, v), 0)
        if current >= 2 or (current == 1 and rng.random() >= parallel_prob):
            continue
        trial = dict(chosen)
        trial[(u, v)] = current + 1
        weights = {x: a_int for x in range(n)}
        solver = SubsetMinimizer(range(n), weights, [(x, y, k) for (x, y), k in trial.items()], q)
        value, _, _ = solver.solve(forced_in=[u, v])
        if value > b_int:
            chosen = trial
            count += 1
            stall = 0
    if edges is not None and count < target:
        raise ConstructionError(f"reached {count} of {target} edges before the attempt budget ran out")
    g = _weightless(params, n, [(x, y, k) for (x, y), k in sorted(chosen.items())])
    if not check_strict_sparsity(g, a, b).ok:
        raise GraphError("internal error: generated graph is not strictly sparse")
    return g
