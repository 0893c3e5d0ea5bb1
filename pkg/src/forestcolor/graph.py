"""Weighted loopless multigraphs with exact, integer-scaled potentials.

Every potential in this package is an ``int`` equal to the true rational
potential multiplied by ``Params.scale = (d1 + 2) * (d2 + 1)``.  With that
scaling ``alpha`` becomes ``d2 + 2`` and ``beta`` becomes ``d1 + 2``, so all
branch decisions are integer comparisons.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

MAX_MULTIPLICITY = 2


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


class SizeGuardError(ValueError):
    """Raised when an exhaustive routine is asked to handle too many vertices."""


@dataclass(frozen=True)
class Params:
    d1: int
    d2: int

    def __post_init__(self) -> None:
        if self.d1 < 0:
            raise GraphError(f"d1 must be non-negative, got {self.d1}")
        if self.d2 < 2:
            raise GraphError(f"d2 must be at least 2, got {self.d2}")

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.d2 + 2, (self.d1 + 2) * (self.d2 + 1))

    @property
    def beta(self) -> Fraction:
        return Fraction(1, self.d2 + 1)

    @property
    def scale(self) -> int:
        return (self.d1 + 2) * (self.d2 + 1)

    @property
    def alpha_scaled(self) -> int:
        return self.d2 + 2

    @property
    def beta_scaled(self) -> int:
        return self.d1 + 2

    @property
    def regime_ok(self) -> bool:
        """True when ``d2 >= 2*d1 + 2``, the range the coloring engine handles."""
        return self.d2 >= 2 * self.d1 + 2

    def unscale(self, value: int) -> Fraction:
        return Fraction(value, self.scale)

    def capacity_bound(self, i: int) -> int:
        """Largest capacity a vertex can have in color ``i`` (``d_i + 1``)."""
        return (self.d1 if i == 1 else self.d2) + 1


def make_params(d1: int, d2: int) -> Params:
    return Params(int(d1), int(d2))


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class VertexProfile:
    degree: int
    c1: int
    c2: int
    null: tuple[bool, bool]
    slack: tuple[bool, bool]
    constrained: tuple[bool, bool]
    doubly_constrained: bool
    somehow_constrained: bool
    three_two_two: bool
    triple_three: bool

    def capacity(self, i: int) -> int:
        return self.c1 if i == 1 else self.c2

    def is_null(self, i: int) -> bool:
        return self.null[i - 1]

    def is_slack(self, i: int) -> bool:
        return self.slack[i - 1]

    def is_constrained(self, i: int) -> bool:
        return self.constrained[i - 1]


class WeightedMultigraph:
    """An immutable weighted multigraph.

    Vertices are integer ids carrying weights ``(W1, W2)``; edges are
    unordered pairs with multiplicity 1 or 2.  Mutation helpers return new
    graphs and leave the receiver untouched.

    Use :meth:`build` for untrusted input: it clamps multiplicities above 2
    and weights above ``d_i + 1`` and records what it changed in
    ``warnings``.
    """

    __slots__ = ("params", "_weights", "_adj", "_m", "warnings")

    def __init__(
        self,
        params: Params,
        weights: dict[int, tuple[int, int]],
        adj: dict[int, dict[int, int]],
        warnings: tuple[str, ...] = (),
    ) -> None:
        # Trusted constructor; callers guarantee normalized, symmetric data.
        self.params = params
        self._weights = weights
        self._adj = adj
        self._m = sum(sum(nbrs.values()) for nbrs in adj.values()) // 2
        self.warnings = warnings

    @classmethod
    def build(
        cls,
        params: Params,
        vertices: Mapping[int, tuple[int, int]] | Iterable[int],
        edges: Iterable[tuple[int, int] | tuple[int, int, int]] = (),
    ) -> WeightedMultigraph:
        """Validate and normalize raw vertex and edge data.

        ``vertices`` is either a mapping ``id -> (W1, W2)`` or an iterable of
        ids (all weightless).  Each edge is ``(u, v)`` or ``(u, v, mult)``;
        repeated pairs accumulate multiplicity.
        """
        warnings: list[str] = []
        if isinstance(vertices, Mapping):
            raw = {int(v): (int(w[0]), int(w[1])) for v, w in vertices.items()}
        else:
            raw = {}
            for v in vertices:
                if int(v) in raw:
                    raise GraphError(f"duplicate vertex id {v}")
                raw[int(v)] = (0, 0)
        weights: dict[int, tuple[int, int]] = {}
        for v in sorted(raw):
            w1, w2 = raw[v]
            if w1 < 0 or w2 < 0:
                raise GraphError(f"vertex {v} has a negative weight")
            cw1 = min(w1, params.d1 + 1)
            cw2 = min(w2, params.d2 + 1)
            if (cw1, cw2) != (w1, w2):
                warnings.append(f"vertex {v}: weights ({w1}, {w2}) clamped to ({cw1}, {cw2})")
            weights[v] = (cw1, cw2)

        adj: dict[int, dict[int, int]] = {v: {} for v in weights}
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            mult = int(edge[2]) if len(edge) > 2 else 1
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge ({u}, {v}) references an unknown vertex")
            if mult < 1:
                raise GraphError(f"edge ({u}, {v}) has multiplicity {mult}")
            total = adj[u].get(v, 0) + mult
            adj[u][v] = total
            adj[v][u] = total
        for u in adj:
            for v, mult in adj[u].items():
                if mult > MAX_MULTIPLICITY:
                    if u < v:
                        warnings.append(f"edge ({u}, {v}): multiplicity {mult} reduced to 2")
                    adj[u][v] = MAX_MULTIPLICITY
        return cls(params, weights, adj, tuple(warnings))

    # -- read access ------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._weights)

    @property
    def n(self) -> int:
        return len(self._weights)

    @property
    def m(self) -> int:
        """Number of edges counted with multiplicity."""
        return self._m

    def __contains__(self, v: object) -> bool:
        return v in self._weights

    def __len__(self) -> int:
        return len(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return (
            self.params == other.params
            and self._weights == other._weights
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.params, frozenset(self._weights.items()), frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"WeightedMultigraph(d1={self.params.d1}, d2={self.params.d2}, n={self.n}, m={self.m})"

    def _check(self, v: int) -> None:
        if v not in self._weights:
            raise GraphError(f"unknown vertex {v}")

    def weight(self, v: int, i: int) -> int:
        self._check(v)
        return self._weights[v][i - 1]

    def weights(self, v: int) -> tuple[int, int]:
        self._check(v)
        return self._weights[v]

    def capacity(self, v: int, i: int) -> int:
        return self.params.capacity_bound(i) - self.weight(v, i)

    def degree(self, v: int) -> int:
        self._check(v)
        return sum(self._adj[v].values())

    def neighbors(self, v: int) -> Mapping[int, int]:
        """Neighbor id -> multiplicity."""
        self._check(v)
        return self._adj[v]

    def multiplicity(self, u: int, v: int) -> int:
        self._check(u)
        return self._adj[u].get(v, 0)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, multiplicity)`` with ``u < v`` in sorted order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    def max_id(self) -> int:
        return max(self._weights, default=-1)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        parts = []
        for start in self.vertices:
            if start in seen:
                continue
            seen.add(start)
            comp = [start]
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            parts.append(sorted(comp))
        return parts

    def induced(self, subset: Iterable[int]) -> WeightedMultigraph:
        keep = set(subset)
        for v in keep:
            self._check(v)
        weights = {v: self._weights[v] for v in sorted(keep)}
        adj = {v: {w: k for w, k in self._adj[v].items() if w in keep} for v in weights}
        return WeightedMultigraph(self.params, weights, adj)

    def with_params(self, params: Params) -> WeightedMultigraph:
        raw = {v: w for v, w in self._weights.items()}
        return WeightedMultigraph.build(params, raw, self.edges())

    # -- persistent mutation helpers -------------------------------------

    def _copy(self) -> tuple[dict[int, tuple[int, int]], dict[int, dict[int, int]]]:
        return dict(self._weights), {v: dict(nbrs) for v, nbrs in self._adj.items()}

    def delete_vertex(self, v: int) -> WeightedMultigraph:
        return self.delete_vertices([v])

    def delete_vertices(self, vs: Iterable[int]) -> WeightedMultigraph:
        drop = set(vs)
        for v in drop:
            self._check(v)
        return self.induced(u for u in self._weights if u not in drop)

    def add_vertex(self, v: int, w1: int = 0, w2: int = 0) -> WeightedMultigraph:
        if v in self._weights:
            raise GraphError(f"vertex {v} already exists")
        if not (0 <= w1 <= self.params.d1 + 1 and 0 <= w2 <= self.params.d2 + 1):
            raise GraphError(f"weights ({w1}, {w2}) out of range for vertex {v}")
        weights, adj = self._copy()
        weights[v] = (w1, w2)
        adj[v] = {}
        return WeightedMultigraph(self.params, weights, adj)

    def add_edge(self, u: int, v: int, mult: int = 1) -> WeightedMultigraph:
        """Add ``mult`` parallel copies of ``uv``; the total is capped at 2."""
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        weights, adj = self._copy()
        total = min(adj[u].get(v, 0) + mult, MAX_MULTIPLICITY)
        adj[u][v] = total
        adj[v][u] = total
        return WeightedMultigraph(self.params, weights, adj)

    def set_weights(self, v: int, w1: int, w2: int) -> WeightedMultigraph:
        self._check(v)
        if not (0 <= w1 <= self.params.d1 + 1 and 0 <= w2 <= self.params.d2 + 1):
            raise GraphError(f"weights ({w1}, {w2}) out of range for vertex {v}")
        weights, adj = dict(self._weights), self._adj
        weights[v] = (w1, w2)
        return WeightedMultigraph(self.params, weights, adj)

    def with_weights(self, updates: Mapping[int, tuple[int, int]]) -> WeightedMultigraph:
        """Replace the weights of several vertices at once."""
        weights = dict(self._weights)
        for v, (w1, w2) in updates.items():
            self._check(v)
            if not (0 <= w1 <= self.params.d1 + 1 and 0 <= w2 <= self.params.d2 + 1):
                raise GraphError(f"weights ({w1}, {w2}) out of range for vertex {v}")
            weights[v] = (w1, w2)
        return WeightedMultigraph(self.params, weights, self._adj)

    def bump_weight(self, v: int, i: int, amount: int = 1, *, saturate: bool = False) -> WeightedMultigraph:
        """Raise ``W_i(v)`` by ``amount``.

        A bump that would push the capacity below zero raises, unless
        ``saturate`` is set, in which case the capacity stops at zero.
        """
        w = list(self.weights(v))
        bound = self.params.capacity_bound(i)
        target = w[i - 1] + amount
        if target > bound:
            if not saturate:
                raise GraphError(f"bumping W{i}({v}) would make its capacity negative")
            target = bound
        if target < 0:
            raise GraphError(f"W{i}({v}) would become negative")
        w[i - 1] = target
        return self.set_weights(v, w[0], w[1])

    def set_capacity_zero(self, v: int, i: int) -> WeightedMultigraph:
        w = list(self.weights(v))
        w[i - 1] = self.params.capacity_bound(i)
        return self.set_weights(v, w[0], w[1])


def vertex_potential(g: WeightedMultigraph, v: int) -> int:
    """Scaled ``alpha*c1(v) + beta*(c2(v) - 1)``."""
    p = g.params
    return p.alpha_scaled * g.capacity(v, 1) + p.beta_scaled * (g.capacity(v, 2) - 1)


def subset_potential(g: WeightedMultigraph, subset: Iterable[int]) -> int:
    """Scaled potential of the induced weighted subgraph on ``subset``."""
    s = set(subset)
    total = 0
    inner = 0
    for v in s:
        total += vertex_potential(g, v)
        inner += sum(k for w, k in g.neighbors(v).items() if w in s)
    return total - g.params.scale * (inner // 2)


def potential(g: WeightedMultigraph) -> int:
    return subset_potential(g, g.vertices)


def profile(g: WeightedMultigraph, v: int) -> VertexProfile:
    d = g.degree(v)
    c = (g.capacity(v, 1), g.capacity(v, 2))
    null = tuple(ci == 0 for ci in c)
    # an isolated vertex with c_i = 0 would also meet the slack rule; null wins
    slack = tuple(
        not null[i] and (c[i] >= d + 1 or (c[i] == d and c[1 - i] >= 1)) for i in range(2)
    )
    constrained = tuple(not null[i] and not slack[i] for i in range(2))
    return VertexProfile(
        degree=d,
        c1=c[0],
        c2=c[1],
        null=null,  # type: ignore[arg-type]
        slack=slack,  # type: ignore[arg-type]
        constrained=constrained,  # type: ignore[arg-type]
        doubly_constrained=all(constrained),
        somehow_constrained=any(constrained),
        three_two_two=d == 3 and c[0] >= 2 and c[1] >= 2,
        triple_three=d == 3 and c[0] >= 3 and c[1] >= 3,
    )


def girth(g: WeightedMultigraph) -> float | int:
    """Length of a shortest cycle; parallel edges are 2-cycles.

    Returns ``math.inf`` for forests.
    """
    best: float | int = float("inf")
    for _, _, mult in g.edges():
        if mult >= 2:
            return 2
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best
