"""Recursive construction of desired colorings.

Each recursion level matches the first applicable case, builds one smaller
weighted graph (two for the gap case), colors it recursively and extends
the result.  Recursion is driven by an explicit stack of generators, so
deep chains of reductions never touch Python's recursion limit.

Case summary (``u`` is always the lowest-id vertex matching the case):

1. empty, at most three vertices (exhaustive search), or disconnected
   (one call per component);
2. some nonempty non-spanning subset has potential at most ``alpha - beta``:
   color the minimizer, then the rest with boundary capacities cut;
3. ``u`` has a single neighbor;
4. ``u`` has degree 2 and capacities ``min >= 1``, ``max >= 2``;
5. ``u`` is a three-two-two on a parallel edge;
6. ``u`` is a three-two-two with no doubly-constrained neighbor;
7. ``u`` is a triple-three with two neighbors that are not somehow-constrained.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Generator, Iterable

from .graph import WeightedMultigraph, profile
from .potential import NONEMPTY_NONSPANNING, SubsetMinimizer, check_hypothesis
from .verify import Coloring, brute_force_color, verify_coloring

logger = logging.getLogger(__name__)

STRATEGIES = ("strict", "guarded")


class EngineError(RuntimeError):
    """An internal invariant failed: no case applied or a coloring broke."""


class HypothesisViolation(ValueError):
    def __init__(self, witness: Iterable[int], potential: int) -> None:
        self.witness = sorted(witness)
        self.potential = potential
        super().__init__(f"subset {self.witness} has scaled potential {potential}, not above -beta")


class RegimeViolation(ValueError):
    def __init__(self, d1: int, d2: int) -> None:
        self.d1, self.d2 = d1, d2
        super().__init__(f"the engine needs d2 >= 2*d1 + 2, got d1={d1}, d2={d2}")


@dataclass
class CaseRecord:
    case_id: int
    depth: int
    size: int  # n + m of the graph handled at this level
    parent: int | None
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass
class CaseTrace:
    records: list[CaseRecord] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def counts(self) -> Counter[int]:
        return Counter(r.case_id for r in self.records)

    def fired(self, case_id: int) -> bool:
        return any(r.case_id == case_id for r in self.records)

    def max_depth(self) -> int:
        return max((r.depth for r in self.records), default=0)

    def to_list(self) -> list[dict[str, Any]]:
        return [
            {"case": r.case_id, "depth": r.depth, "size": r.size, "parent": r.parent, "detail": r.detail}
            for r in self.records
        ]


Extend = Callable[[Coloring], Coloring]


@dataclass
class _Candidate:
    child: WeightedMultigraph
    extend: Extend
    label: str


@dataclass
class _Plan:
    case_id: int
    detail: dict[str, Any]
    candidates: list[_Candidate]


_Request = tuple[WeightedMultigraph, int, int]  # child graph, parent record, parent depth
_Step = Generator[_Request, Coloring, Coloring]


def _size(g: WeightedMultigraph) -> int:
    return g.n + g.m


def _flip(g: WeightedMultigraph, u: int, nbrs: Iterable[int], col: Coloring, j: int) -> int | None:
    """Move the first neighbor that can safely join class ``j``; return it."""
    for x in sorted(nbrs):
        if col[x] == j or g.capacity(x, j) == 0:
            continue
        if any(col[w] == j for w in g.neighbors(x) if w != u):
            continue
        col[x] = j
        return x
    return None


class _Engine:
    def __init__(self, strategy: str, debug: bool, guard: bool) -> None:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        self.strategy = strategy
        self.debug = debug
        self.guard = guard
        self.trace = CaseTrace()

    # -- driver -----------------------------------------------------------

    def run(self, g: WeightedMultigraph) -> Coloring:
        stack: list[_Step] = [self._solve(g, 0, None)]
        reply: Coloring | None = None
        while stack:
            try:
                child, parent, depth = stack[-1].send(reply)  # type: ignore[arg-type]
            except StopIteration as stop:
                stack.pop()
                reply = stop.value
                continue
            stack.append(self._solve(child, depth + 1, parent))
            reply = None
        assert reply is not None
        return reply

    def _record(self, case_id: int, g: WeightedMultigraph, depth: int, parent: int | None, detail: dict) -> int:
        self.trace.records.append(CaseRecord(case_id, depth, _size(g), parent, detail))
        return len(self.trace.records) - 1

    def _diagnose(self, message: str) -> None:
        logger.warning(message)
        self.trace.diagnostics.append(message)

    def _call(self, child: WeightedMultigraph, me: int, depth: int) -> _Step:
        col = yield (child, me, depth)
        if self.debug:
            verdict = verify_coloring(child, col)
            if not verdict.ok:
                raise EngineError(f"child coloring at depth {depth + 1} is invalid: {verdict.violations}")
        return col

    def _solve(self, g: WeightedMultigraph, depth: int, parent: int | None) -> _Step:
        if g.n <= 3:
            col = {} if g.n == 0 else brute_force_color(g)
            self._record(1, g, depth, parent, {"kind": "exhaustive", "vertices": g.vertices})
            if col is None:
                raise EngineError(f"no coloring of the base graph {g.vertices}; the hypothesis must have been bypassed")
            return col

        parts = g.components()
        if len(parts) > 1:
            me = self._record(1, g, depth, parent, {"kind": "components", "sizes": [len(p) for p in parts]})
            col: Coloring = {}
            for part in parts:
                col.update((yield from self._call(g.induced(part), me, depth)))
            return col

        if self.strategy == "guarded":
            plan = self._local_plan(g)
            if plan is not None:
                chosen = self._choose(plan, require=True)
                if chosen is not None:
                    return (yield from self._run_plan(g, plan, chosen, depth, parent))
            gap = self._gap(g)
            if gap is None:
                raise EngineError("no case applies (guarded strategy)")
            return (yield from self._case2(g, *gap, depth, parent))

        gap = self._gap(g)
        if gap is not None:
            return (yield from self._case2(g, *gap, depth, parent))
        plan = self._local_plan(g)
        if plan is None:
            raise EngineError(f"no case applies to a connected graph with {g.n} vertices and {g.m} edges")
        chosen = self._choose(plan, require=False)
        if chosen is None:
            raise EngineError(f"case {plan.case_id}: no candidate satisfies the hypothesis")
        return (yield from self._run_plan(g, plan, chosen, depth, parent))

    def _choose(self, plan: _Plan, require: bool) -> _Candidate | None:
        """Pick the first candidate whose child satisfies the hypothesis.

        Single-candidate plans are only checked when guarding (strict mode)
        or when the check decides the route (guarded mode).
        """
        if len(plan.candidates) == 1 and not require:
            cand = plan.candidates[0]
            if self.guard:
                check = check_hypothesis(cand.child)
                if not check.ok:
                    self._diagnose(
                        f"case {plan.case_id}: child fails the hypothesis on {sorted(check.witness or ())} "
                        f"(scaled potential {check.potential})"
                    )
            return cand
        for cand in plan.candidates:
            if check_hypothesis(cand.child).ok:
                return cand
        return None

    def _run_plan(
        self, g: WeightedMultigraph, plan: _Plan, chosen: _Candidate, depth: int, parent: int | None
    ) -> _Step:
        detail = dict(plan.detail, route=chosen.label)
        me = self._record(plan.case_id, g, depth, parent, detail)
        sub = yield from self._call(chosen.child, me, depth)
        col = chosen.extend(dict(sub))
        flipped = [v for v in sub if v in col and col[v] != sub[v]]
        if flipped:
            detail["flipped"] = flipped
            if len(flipped) > 1:
                raise EngineError(f"case {plan.case_id}: flip repair moved {flipped}")
        if self.debug:
            self._check(g, col, plan.case_id)
        return col

    def _check(self, g: WeightedMultigraph, col: Coloring, case_id: int) -> None:
        verdict = verify_coloring(g, col)
        if not verdict.ok:
            raise EngineError(f"case {case_id} produced an invalid coloring: {verdict.violations}")

    # -- case 2 -----------------------------------------------------------

    def _gap(self, g: WeightedMultigraph) -> tuple[frozenset[int], int] | None:
        value, subset = SubsetMinimizer.for_potential(g).minimize(NONEMPTY_NONSPANNING)
        p = g.params
        if value <= p.alpha_scaled - p.beta_scaled:
            return subset, value
        return None

    def _case2(self, g: WeightedMultigraph, h: frozenset[int], value: int, depth: int, parent: int | None) -> _Step:
        detail: dict[str, Any] = {"subset": sorted(h), "potential": value}
        me = self._record(2, g, depth, parent, detail)
        inner = g.induced(h)
        z = x = None
        if value > 0:
            z = min(v for v in h if any(w not in h for w in g.neighbors(v)))
            x = min(w for w in g.neighbors(z) if w not in h)
            inner = inner.bump_weight(z, 2, saturate=True)
            detail.update(z=z, x=x)
        col_h = yield from self._call(inner, me, depth)

        exception = value > 0 and col_h[z] == 2
        if exception and {w: k for w, k in g.neighbors(x).items() if w in h} != {z: 1}:
            self._diagnose(f"case 2: boundary vertex {x} has several edges into the minimizer; zeroing instead")
            exception = False
        detail["subcase"] = "1" if value <= 0 else ("2B" if exception else "2A")

        rest = [v for v in g.vertices if v not in h]
        updates: dict[int, tuple[int, int]] = {}
        for u in rest:
            w = list(g.weights(u))
            for nb in g.neighbors(u):
                if nb not in h:
                    continue
                i = col_h[nb]
                if exception and u == x and i == 2:
                    w[1] = min(w[1] + 1, g.params.capacity_bound(2))
                else:
                    w[i - 1] = g.params.capacity_bound(i)
            if tuple(w) != g.weights(u):
                updates[u] = (w[0], w[1])
        star = g.induced(rest).with_weights(updates)
        if self.guard:
            check = check_hypothesis(star)
            if not check.ok:
                self._diagnose(f"case 2: remainder fails the hypothesis on {sorted(check.witness or ())}")
        col_rest = yield from self._call(star, me, depth)

        col = dict(col_h)
        col.update(col_rest)
        if self.debug:
            self._bridge_check(g, h, col, (z, x) if exception else None)
            self._check(g, col, 2)
        return col

    def _bridge_check(self, g: WeightedMultigraph, h: frozenset[int], col: Coloring, allowed) -> None:
        for u, v, _ in g.edges():
            if (u in h) != (v in h) and col[u] == col[v]:
                if allowed is None or {u, v} != set(allowed):
                    raise EngineError(f"case 2: monochromatic bridge {u}-{v}")

    # -- cases 3 to 7 -----------------------------------------------------

    def _local_plan(self, g: WeightedMultigraph) -> _Plan | None:
        for finder in (self._case3, self._case4, self._case5, self._case6, self._case7):
            plan = finder(g)
            if plan is not None:
                return plan
        return None

    def _case3(self, g: WeightedMultigraph) -> _Plan | None:
        u = next((v for v in g.vertices if len(g.neighbors(v)) == 1), None)
        if u is None:
            return None
        (x, mult), = g.neighbors(u).items()
        c = (g.capacity(u, 1), g.capacity(u, 2))
        h = g.delete_vertex(u)
        detail = {"u": u, "x": x, "multiplicity": mult}
        if c[0] >= 1 and c[1] >= 1:
            def extend(col: Coloring) -> Coloring:
                col[u] = 3 - col[x]
                return col
            return _Plan(3, detail, [_Candidate(h, extend, "opposite")])
        if c == (0, 0):
            raise EngineError(f"case 3: vertex {u} has both capacities zero")
        k = 1 if c[0] > 0 else 2  # the only color u can take
        if mult == 1 and c[k - 1] >= 2:
            child, route = h.bump_weight(x, k, saturate=True), "bump"
        else:
            child, route = h.set_capacity_zero(x, k), "zero"

        def extend_forced(col: Coloring) -> Coloring:
            col[u] = k
            return col
        return _Plan(3, detail, [_Candidate(child, extend_forced, route)])

    def _case4(self, g: WeightedMultigraph) -> _Plan | None:
        for u in g.vertices:
            # a doubled pendant edge also has degree 2 but belongs to case 3
            if g.degree(u) != 2 or len(g.neighbors(u)) != 2:
                continue
            c1, c2 = g.capacity(u, 1), g.capacity(u, 2)
            if min(c1, c2) >= 1 and max(c1, c2) >= 2:
                break
        else:
            return None
        x, y = sorted(g.neighbors(u))
        # with c2 >= 2 the neighbors give room in class 2, else in class 1
        i = 2 if c2 >= 2 else 1
        child = g.delete_vertex(u).bump_weight(x, i, saturate=True).bump_weight(y, i, saturate=True)

        def extend(col: Coloring) -> Coloring:
            col[u] = 3 - i if col[x] == i and col[y] == i else i
            return col
        return _Plan(4, {"u": u, "x": x, "y": y, "bumped_class": i}, [_Candidate(child, extend, f"bump{i}")])

    def _case5(self, g: WeightedMultigraph) -> _Plan | None:
        for u in g.vertices:
            nb = g.neighbors(u)
            if len(nb) == 2 and 2 in nb.values() and profile(g, u).three_two_two:
                break
        else:
            return None
        x = next(w for w, k in nb.items() if k == 2)
        v = next(w for w, k in nb.items() if k == 1)
        h = g.delete_vertex(u)
        via_v = h.bump_weight(v, 1, saturate=True).bump_weight(v, 2, saturate=True)
        via_x = h.set_capacity_zero(x, 1).bump_weight(v, 1, saturate=True)

        def opposite_x(col: Coloring) -> Coloring:
            col[u] = 3 - col[x]
            return col

        def class_one(col: Coloring) -> Coloring:
            col[u] = 1
            return col
        return _Plan(5, {"u": u, "v": v, "x": x}, [_Candidate(via_v, opposite_x, "v"), _Candidate(via_x, class_one, "x")])

    def _majority_extend(self, g: WeightedMultigraph, u: int, nbrs: list[int]) -> Extend:
        def extend(col: Coloring) -> Coloring:
            ones = sum(1 for x in nbrs if col[x] == 1)
            j = 1 if ones >= 2 else 2
            _flip(g, u, nbrs, col, j)
            col[u] = 3 - j
            return col
        return extend

    def _case6(self, g: WeightedMultigraph) -> _Plan | None:
        for u in g.vertices:
            nb = g.neighbors(u)
            if len(nb) != 3 or not profile(g, u).three_two_two:
                continue
            profiles = {x: profile(g, x) for x in nb}
            if not any(pr.doubly_constrained for pr in profiles.values()):
                break
        else:
            return None
        nbrs = sorted(nb)
        child = g.delete_vertex(u)
        colors = {}
        for x in nbrs:
            pr = profiles[x]
            j = next(i for i in (1, 2) if pr.is_null(i) or pr.is_slack(i))
            colors[x] = j
            child = child.bump_weight(x, 3 - j, saturate=True)
        detail = {"u": u, "neighbors": nbrs, "free_class": colors}
        return _Plan(6, detail, [_Candidate(child, self._majority_extend(g, u, nbrs), "bump")])

    def _case7(self, g: WeightedMultigraph) -> _Plan | None:
        for u in g.vertices:
            nb = g.neighbors(u)
            if len(nb) != 3 or not profile(g, u).triple_three:
                continue
            loose = [x for x in sorted(nb) if not profile(g, x).somehow_constrained]
            if len(loose) >= 2:
                break
        else:
            return None
        x2, x3 = loose[:2]
        x1 = next(x for x in sorted(nb) if x not in (x2, x3))
        nbrs = sorted(nb)
        h = g.delete_vertex(u)
        g1 = h.bump_weight(x1, 1, saturate=True).bump_weight(x1, 2, saturate=True)
        g23 = h.add_edge(x2, x3)

        def opposite_x1(col: Coloring) -> Coloring:
            j = col[x1]
            _flip(g, u, (x2, x3), col, j)
            col[u] = 3 - j
            return col
        detail = {"u": u, "x1": x1, "x2": x2, "x3": x3}
        return _Plan(7, detail, [
            _Candidate(g1, self._majority_extend(g, u, nbrs), "G1"),
            _Candidate(g23, opposite_x1, "G23"),
        ])


def color(
    g: WeightedMultigraph,
    *,
    strategy: str = "strict",
    debug: bool = False,
    guard: bool = True,
    check_input: bool = True,
) -> tuple[Coloring, CaseTrace]:
    """Find a desired coloring of a graph that satisfies the hypothesis.

    ``strategy="strict"`` tests the cases in order 1 to 7.  ``"guarded"``
    tries the local cases 3 to 7 first and accepts one only when its
    smaller graph passes the hypothesis check, falling back to the gap case.
    ``debug`` verifies every intermediate coloring.  ``guard`` checks each
    single-candidate child against the hypothesis and logs a diagnostic on
    failure.  The final coloring is always verified.
    """
    p = g.params
    if not p.regime_ok:
        raise RegimeViolation(p.d1, p.d2)
    if check_input:
        check = check_hypothesis(g)
        if not check.ok:
            raise HypothesisViolation(check.witness or (), check.potential or 0)
    engine = _Engine(strategy, debug, guard)
    col = engine.run(g)
    verdict = verify_coloring(g, col)
    if not verdict.ok:
        raise EngineError(f"final coloring is invalid: {verdict.violations}")
    return col, engine.trace
