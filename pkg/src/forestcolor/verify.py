"""Ground-truth checks for desired colorings.

A coloring maps every vertex to class 1 or 2.  It is *desired* when each
class induces a forest (a parallel edge inside a class is a 2-cycle) and
every vertex ``x`` in class ``j`` has ``|N^m(x) & V_j| + W_j(x) <= d_j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graph import SizeGuardError, WeightedMultigraph

Coloring = dict[int, int]

EXHAUSTIVE_LIMIT = 22
CRITICAL_LIMIT = 16


@dataclass(frozen=True)
class Violation:
    kind: str  # "degree_budget" or "cycle"
    cls: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class _UnionFind:
    def __init__(self, items) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _tree_path(tree: dict[int, list[int]], a: int, b: int) -> list[int]:
    prev = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in tree[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def verify_coloring(g: WeightedMultigraph, coloring: Mapping[int, int]) -> Verdict:
    """Check a coloring and report every violation found."""
    missing = [v for v in g.vertices if v not in coloring]
    if missing:
        raise ValueError(f"coloring does not assign vertices {missing}")
    bad = [v for v in g.vertices if coloring[v] not in (1, 2)]
    if bad:
        raise ValueError(f"vertices {bad} have a class other than 1 or 2")

    violations: list[Violation] = []
    for v in g.vertices:
        j = coloring[v]
        same = sum(mult for w, mult in g.neighbors(v).items() if coloring[w] == j)
        if same + g.weight(v, j) > (g.params.d1 if j == 1 else g.params.d2):
            violations.append(Violation("degree_budget", j, (v,)))

    uf = _UnionFind(g.vertices)
    tree: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v, mult in g.edges():
        if coloring[u] != coloring[v]:
            continue
        j = coloring[u]
        if mult >= 2:
            violations.append(Violation("cycle", j, (u, v)))
            continue
        if uf.union(u, v):
            tree[u].append(v)
            tree[v].append(u)
        else:
            violations.append(Violation("cycle", j, tuple(_tree_path(tree, u, v))))
    return Verdict(tuple(violations))


def _assignments(g: WeightedMultigraph) -> Iterator[Coloring]:
    """Yield every desired coloring, lower ids preferring class 1 first.

    Backtracking over the vertex order; partial assignments are pruned as
    soon as a budget or cycle violation is certain, so the yield order
    matches plain lexicographic enumeration of all 2^n assignments.
    """
    verts = g.vertices
    n = len(verts)
    pos = {v: k for k, v in enumerate(verts)}
    earlier = [[(w, mult) for w, mult in g.neighbors(v).items() if pos[w] < k] for k, v in enumerate(verts)]
    limit = (g.params.d1, g.params.d2)
    load = [0] * n
    cls = [0] * n
    # union-find with undo: union by size, no path compression
    parent = list(range(n))
    size = [1] * n

    def root(k: int) -> int:
        while parent[k] != k:
            k = parent[k]
        return k

    def place(k: int) -> Iterator[None]:
        v = verts[k]
        for j in (1, 2):
            cap = limit[j - 1] - g.weight(v, j)
            same = [(pos[w], mult) for w, mult in earlier[k] if cls[pos[w]] == j]
            own = sum(mult for _, mult in same)
            if own > cap:
                continue
            if any(mult >= 2 or load[i] + 1 > limit[j - 1] - g.weight(verts[i], j) for i, mult in same):
                continue
            roots = [root(i) for i, _ in same]
            if len(set(roots)) != len(roots):
                continue
            cls[k] = j
            load[k] = own
            merged = []
            for i, _ in same:
                load[i] += 1
            for r in roots:
                a, b = root(r), root(k)
                if size[a] > size[b]:
                    a, b = b, a
                parent[a] = b
                size[b] += size[a]
                merged.append((a, b))
            yield None
            for a, b in reversed(merged):
                parent[a] = a
                size[b] -= size[a]
            for i, _ in same:
                load[i] -= 1
            cls[k] = 0
            load[k] = 0

    def search(k: int) -> Iterator[Coloring]:
        if k == n:
            yield {verts[i]: cls[i] for i in range(n)}
            return
        for _ in place(k):
            yield from search(k + 1)

    yield from search(0)


def brute_force_color(g: WeightedMultigraph) -> Coloring | None:
    """First desired coloring in deterministic order, or ``None``."""
    if g.n > EXHAUSTIVE_LIMIT:
        raise SizeGuardError(f"{g.n} vertices exceeds the exhaustive limit of {EXHAUSTIVE_LIMIT}")
    return next(_assignments(g), None)


def all_desired_colorings(g: WeightedMultigraph) -> Iterator[Coloring]:
    if g.n > EXHAUSTIVE_LIMIT:
        raise SizeGuardError(f"{g.n} vertices exceeds the exhaustive limit of {EXHAUSTIVE_LIMIT}")
    return _assignments(g)


def weakenings(g: WeightedMultigraph) -> Iterator[WeightedMultigraph]:
    """Every graph one atomic step weaker than ``g``.

    The steps are: drop one unit of an edge's multiplicity, delete one vertex
    with its edges, or lower one weight by one.
    """
    for u, v, mult in g.edges():
        weights = {x: g.weights(x) for x in g.vertices}
        edges = [(a, b, k - (1 if (a, b) == (u, v) else 0)) for a, b, k in g.edges()]
        yield WeightedMultigraph.build(g.params, weights, [e for e in edges if e[2] > 0])
    for v in g.vertices:
        yield g.delete_vertex(v)
    for v in g.vertices:
        w1, w2 = g.weights(v)
        if w1 > 0:
            yield g.set_weights(v, w1 - 1, w2)
        if w2 > 0:
            yield g.set_weights(v, w1, w2 - 1)


def is_critical(g: WeightedMultigraph) -> bool:
    """No desired coloring, but every single-step weakening has one.

    Colorability is monotone under weakening, so single steps stand in for
    all proper weighted subgraphs.
    """
    if g.n > CRITICAL_LIMIT:
        raise SizeGuardError(f"{g.n} vertices exceeds the criticality limit of {CRITICAL_LIMIT}")
    if brute_force_color(g) is not None:
        return False
    return all(brute_force_color(h) is not None for h in weakenings(g))
