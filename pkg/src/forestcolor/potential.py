"""Exact minimization of subset potential.

Minimizing ``rho(S) = sum_{v in S} w(v) - D * e(G[S])`` is the complement of
a project-selection problem: every edge class ``uv`` is a project with
profit ``mult * D`` that requires both endpoints, and every vertex is a
resource costing ``w(v)``.  A minimum cut in the usual network

    source -> edge node        capacity mult * D
    edge node -> endpoints     capacity INF
    vertex -> sink             capacity w(v)      (w(v) >= 0)
    source -> vertex           capacity -w(v)     (w(v) < 0)

has value ``rho(S) + P - N`` where ``S`` is the vertex part of the source
side, ``P`` is the total profit and ``N`` the sum of negative weights.
Forcing a vertex into ``S`` (out of ``S``) sets its source (sink) arc to
INF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

import numpy as np

from .flow import FlowNetwork
from .graph import SizeGuardError, WeightedMultigraph, subset_potential, vertex_potential

BRUTE_FORCE_LIMIT = 22


class InfeasibleConstraint(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    kind: str
    forced_in: frozenset[int] = field(default_factory=frozenset)
    forced_out: frozenset[int] = field(default_factory=frozenset)

    def admits(self, subset: frozenset[int], vertices: frozenset[int]) -> bool:
        if self.kind == "any":
            return True
        if self.kind == "nonempty":
            return bool(subset)
        if self.kind == "nonempty_nonspanning":
            return bool(subset) and subset != vertices
        return self.forced_in <= subset and not (self.forced_out & subset)


ANY = Constraint("any")
NONEMPTY = Constraint("nonempty")
NONEMPTY_NONSPANNING = Constraint("nonempty_nonspanning")


def forced(forced_in: Iterable[int] = (), forced_out: Iterable[int] = ()) -> Constraint:
    return Constraint("forced", frozenset(forced_in), frozenset(forced_out))


def parse_constraint(text: str | Constraint) -> Constraint:
    if isinstance(text, Constraint):
        return text
    key = text.replace("-", "_").lower()
    for c in (ANY, NONEMPTY, NONEMPTY_NONSPANNING):
        if c.kind == key:
            return c
    raise ValueError(f"unknown constraint {text!r}")


@dataclass(frozen=True)
class SubsetResult:
    subset: frozenset[int]
    potential: int

    def sorted(self) -> list[int]:
        return sorted(self.subset)


@dataclass(frozen=True)
class _FlowState:
    flow: int
    residual: np.ndarray
    forced_in: frozenset[int]
    forced_out: frozenset[int]


def _lex_key(item: tuple[int, frozenset[int]]) -> tuple[int, list[int]]:
    return item[0], sorted(item[1])


class SubsetMinimizer:
    """Min-cut minimizer of ``sum_{v in S} weights[v] - unit * e(G[S])``.

    One network is built per instance and reused for every forced query.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        weights: Mapping[int, int],
        edges: Iterable[tuple[int, int, int]],
        unit: int,
    ) -> None:
        self.vertices = sorted(vertices)
        self.weights = dict(weights)
        self.edges = list(edges)
        self.unit = unit
        n = len(self.vertices)
        k = len(self.edges)
        index = {v: 2 + i for i, v in enumerate(self.vertices)}
        self._index = index
        self._vertex_array = np.array(self.vertices, dtype=np.int64)
        w = np.fromiter((self.weights[v] for v in self.vertices), dtype=np.int64, count=n)
        ends = np.array([(index[a], index[b], mult) for a, b, mult in self.edges], dtype=np.int64).reshape(k, 3)
        self.profit = int(ends[:, 2].sum()) * unit
        self.negative = int(w[w < 0].sum())
        self.inf = self.profit + int(np.abs(w).sum()) + 1

        net = FlowNetwork(2 + n + k)
        nodes = np.arange(2, 2 + n)
        src_ids = net.add_arcs(np.full(n, net.source), nodes, np.maximum(-w, 0))
        sink_ids = net.add_arcs(nodes, np.full(n, net.sink), np.maximum(w, 0))
        edge_nodes = np.arange(2 + n, 2 + n + k)
        net.add_arcs(np.full(k, net.source), edge_nodes, ends[:, 2] * unit)
        net.add_arcs(np.concatenate([edge_nodes, edge_nodes]), np.concatenate([ends[:, 0], ends[:, 1]]), np.full(2 * k, self.inf))
        net.freeze()
        self._src_arc = dict(zip(self.vertices, src_ids.tolist()))
        self._sink_arc = dict(zip(self.vertices, sink_ids.tolist()))
        self._src_cap = dict(zip(self.vertices, np.maximum(-w, 0).tolist()))
        self._sink_cap = dict(zip(self.vertices, np.maximum(w, 0).tolist()))
        self.network = net

    @classmethod
    def for_potential(cls, g: WeightedMultigraph) -> SubsetMinimizer:
        weights = {v: vertex_potential(g, v) for v in g.vertices}
        return cls(g.vertices, weights, g.edges(), g.params.scale)

    def value_of(self, subset: Iterable[int]) -> int:
        s = set(subset)
        total = sum(self.weights[v] for v in s)
        return total - self.unit * sum(mult for u, v, mult in self.edges if u in s and v in s)

    def solve(
        self, forced_in: Iterable[int] = (), forced_out: Iterable[int] = ()
    ) -> tuple[int, frozenset[int], frozenset[int]]:
        """Return ``(value, smallest minimizer, largest minimizer)``."""
        state = self._flow(set(forced_in), set(forced_out))
        return self._read(state)

    def _flow(self, forced_in: set[int], forced_out: set[int], warm: _FlowState | None = None) -> _FlowState:
        if forced_in & forced_out:
            raise InfeasibleConstraint("a vertex is both forced in and forced out")
        if warm is None:
            overrides = {self._src_arc[v]: self.inf for v in forced_in}
            overrides.update({self._sink_arc[v]: self.inf for v in forced_out})
            flow, residual = self.network.max_flow(overrides)
        else:
            # forcing only raises capacities, so the earlier flow stays feasible
            if not (warm.forced_in <= forced_in and warm.forced_out <= forced_out):
                raise ValueError("a warm start must force a subset of the new constraints")
            overrides = {self._src_arc[v]: self.inf - self._src_cap[v] for v in forced_in - warm.forced_in}
            overrides.update({self._sink_arc[v]: self.inf - self._sink_cap[v] for v in forced_out - warm.forced_out})
            flow, residual = self.network.max_flow(overrides, warm=(warm.flow, warm.residual))
        if flow >= self.inf:
            raise InfeasibleConstraint("no subset satisfies the forcing constraints")
        return _FlowState(flow, residual, frozenset(forced_in), frozenset(forced_out))

    def _read(self, state: _FlowState) -> tuple[int, frozenset[int], frozenset[int]]:
        value = state.flow - self.profit + self.negative
        n = len(self.vertices)
        reach = self.network.source_reachable(state.residual)[2 : 2 + n]
        back = self.network.sink_reaching(state.residual)[2 : 2 + n]
        verts = self._vertex_array
        smallest = frozenset(verts[reach].tolist())
        largest = frozenset(verts[~back].tolist())
        return value, smallest, largest

    def _smallest(self, state: _FlowState) -> tuple[int, frozenset[int]]:
        value = state.flow - self.profit + self.negative
        n = len(self.vertices)
        reach = self.network.source_reachable(state.residual)[2 : 2 + n]
        return value, frozenset(self._vertex_array[reach].tolist())

    def minimize(self, constraint: Constraint) -> tuple[int, frozenset[int]]:
        if constraint.kind == "any":
            value, smallest, _ = self.solve()
            return value, smallest
        if constraint.kind == "forced":
            value, smallest, _ = self.solve(constraint.forced_in, constraint.forced_out)
            return value, smallest
        if not self.vertices:
            raise InfeasibleConstraint(f"{constraint.kind} needs a nonempty graph")
        if constraint.kind == "nonempty":
            return self._min_nonempty()
        if constraint.kind == "nonempty_nonspanning":
            return self._min_proper()
        raise ValueError(f"unknown constraint kind {constraint.kind!r}")

    def _best(self, found: list[tuple[int, frozenset[int]]]) -> tuple[int, frozenset[int]]:
        return min(found, key=_lex_key)

    def _min_nonempty(self) -> tuple[int, frozenset[int]]:
        state = self._flow(set(), set())
        value, smallest, largest = self._read(state)
        if smallest:
            return value, smallest
        if largest:
            return value, largest
        return self._best([self._smallest(self._flow({u}, set(), state)) for u in self.vertices])

    def _min_proper(self) -> tuple[int, frozenset[int]]:
        # Every nonempty proper S either contains the pivot r (and misses some
        # v) or misses r (and contains some u): 2(n - 1) cuts cover the family.
        if len(self.vertices) < 2:
            raise InfeasibleConstraint("nonempty_nonspanning needs at least two vertices")
        everything = frozenset(self.vertices)
        r = self.vertices[0]
        rest = self.vertices[1:]
        found: list[tuple[int, frozenset[int]]] = []

        state = self._flow({r}, set())
        value, smallest, _ = self._read(state)
        if smallest != everything:
            found.append((value, smallest))
        else:
            found.extend(self._smallest(self._flow({r}, {v}, state)) for v in rest)

        state = self._flow(set(), {r})
        value, smallest, largest = self._read(state)
        if smallest:
            found.append((value, smallest))
        elif largest:
            found.append((value, largest))
        else:
            found.extend(self._smallest(self._flow({u}, {r}, state)) for u in rest)
        return self._best(found)


def min_potential(g: WeightedMultigraph, constraint: Constraint | str = ANY) -> SubsetResult:
    """Exact minimum of ``subset_potential`` over a constrained family."""
    constraint = parse_constraint(constraint)
    _check_constraint(g, constraint)
    value, subset = SubsetMinimizer.for_potential(g).minimize(constraint)
    certificate = subset_potential(g, subset)
    if certificate != value:
        raise AssertionError(f"cut value {value} disagrees with subset potential {certificate}")
    return SubsetResult(subset, value)


def _check_constraint(g: WeightedMultigraph, constraint: Constraint) -> None:
    if constraint.kind == "forced":
        unknown = (constraint.forced_in | constraint.forced_out) - set(g.vertices)
        if unknown:
            raise InfeasibleConstraint(f"forced vertices not in graph: {sorted(unknown)}")
        if constraint.forced_in & constraint.forced_out:
            raise InfeasibleConstraint("a vertex is both forced in and forced out")
    elif constraint.kind == "nonempty" and g.n == 0:
        raise InfeasibleConstraint("nonempty constraint on an empty graph")
    elif constraint.kind == "nonempty_nonspanning" and g.n < 2:
        raise InfeasibleConstraint("nonempty_nonspanning needs at least two vertices")


def all_subset_potentials(g: WeightedMultigraph) -> np.ndarray:
    """Potential of every subset, indexed by bitmask over ``g.vertices``."""
    verts = g.vertices
    n = len(verts)
    if n > BRUTE_FORCE_LIMIT:
        raise SizeGuardError(f"{n} vertices exceeds the brute-force limit of {BRUTE_FORCE_LIMIT}")
    pos = {v: k for k, v in enumerate(verts)}
    scale = g.params.scale
    pot = np.zeros(1 << n, dtype=np.int64)
    for k, v in enumerate(verts):
        low = np.arange(1 << k, dtype=np.int64)
        inner = np.zeros(1 << k, dtype=np.int64)
        for w, mult in g.neighbors(v).items():
            j = pos[w]
            if j < k:
                inner += mult * ((low >> j) & 1)
        pot[1 << k : 1 << (k + 1)] = pot[: 1 << k] + vertex_potential(g, v) - scale * inner
    return pot


def min_potential_bruteforce(g: WeightedMultigraph, constraint: Constraint | str = ANY) -> SubsetResult:
    """Exhaustive minimum; ties go to the lexicographically smallest sorted set."""
    constraint = parse_constraint(constraint)
    _check_constraint(g, constraint)
    verts = g.vertices
    n = len(verts)
    pot = all_subset_potentials(g)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    full = (1 << n) - 1
    if constraint.kind in ("nonempty", "nonempty_nonspanning"):
        ok &= masks != 0
    if constraint.kind == "nonempty_nonspanning":
        ok &= masks != full
    if constraint.kind == "forced":
        pos = {v: k for k, v in enumerate(verts)}
        in_mask = sum(1 << pos[v] for v in constraint.forced_in)
        out_mask = sum(1 << pos[v] for v in constraint.forced_out)
        ok &= (masks & in_mask) == in_mask
        ok &= (masks & out_mask) == 0
    if not ok.any():
        raise InfeasibleConstraint(f"no subset satisfies {constraint.kind}")
    best = int(pot[ok].min())
    winners = masks[ok & (pot == best)]
    subsets = [frozenset(verts[k] for k in range(n) if (int(mask) >> k) & 1) for mask in winners]
    return SubsetResult(min(subsets, key=sorted), best)


@dataclass(frozen=True)
class SparsityCheck:
    ok: bool
    witness: frozenset[int] | None = None


def check_strict_sparsity(g: WeightedMultigraph, a: Fraction | int | str, b: Fraction | int | str) -> SparsityCheck:
    """Is ``e(H) < a*n(H) - b`` for every nonempty subgraph ``H``?

    Induced subgraphs suffice, since dropping edges only helps.  Returns a
    violating vertex set when the check fails.
    """
    a, b = Fraction(a), Fraction(b)
    q = lcm(a.denominator, b.denominator)
    a_int, b_int = int(a * q), int(b * q)
    if g.n == 0:
        return SparsityCheck(True)
    minimizer = SubsetMinimizer(g.vertices, {v: a_int for v in g.vertices}, g.edges(), q)
    # want min over nonempty S of a|S| - e(S) > b, all scaled by q
    if b_int < 0:
        value, subset = minimizer.minimize(ANY)
    else:
        value, subset = minimizer.minimize(NONEMPTY)
    if value <= b_int:
        return SparsityCheck(False, subset)
    return SparsityCheck(True)


@dataclass(frozen=True)
class HypothesisCheck:
    ok: bool
    witness: frozenset[int] | None = None
    potential: int | None = None


def check_hypothesis(g: WeightedMultigraph) -> HypothesisCheck:
    """Is every nonempty induced subgraph's potential strictly above ``-beta``?

    The empty set has potential 0 > -beta, so one unconstrained cut decides
    it: a minimum at or below ``-beta`` is necessarily nonempty.
    """
    if g.n == 0:
        return HypothesisCheck(True)
    value, subset = SubsetMinimizer.for_potential(g).minimize(ANY)
    if value <= -g.params.beta_scaled:
        return HypothesisCheck(False, subset, value)
    return HypothesisCheck(True, None, value)
