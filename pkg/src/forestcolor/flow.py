"""Exact integer max-flow (Dinic) with residual reachability.

The network is stored in CSR form with explicit reverse arcs.  The kernels
are compiled with numba because the minimizer calls them O(n) times per
query, and per-call overhead matters more than asymptotics at that rate.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _bfs_levels(n_nodes, first, head, cap, s, t, level, queue):
    for i in range(n_nodes):
        level[i] = -1
    level[s] = 0
    qh = 0
    qt = 0
    queue[qt] = s
    qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for a in range(first[u], first[u + 1]):
            v = head[a]
            if cap[a] > 0 and level[v] < 0:
                level[v] = level[u] + 1
                queue[qt] = v
                qt += 1
    return level[t] >= 0


@njit(cache=True)
def _dinic(n_nodes, first, head, tail, rev, cap, s, t):
    """Run Dinic's algorithm in place on residual capacities ``cap``."""
    level = np.empty(n_nodes, np.int64)
    queue = np.empty(n_nodes, np.int64)
    it = np.empty(n_nodes, np.int64)
    stack = np.empty(n_nodes, np.int64)
    total = 0
    while _bfs_levels(n_nodes, first, head, cap, s, t, level, queue):
        for i in range(n_nodes):
            it[i] = first[i]
        while True:
            u = s
            depth = 0
            found = False
            while True:
                if u == t:
                    found = True
                    break
                advanced = False
                while it[u] < first[u + 1]:
                    a = it[u]
                    v = head[a]
                    if cap[a] > 0 and level[v] == level[u] + 1:
                        stack[depth] = a
                        depth += 1
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1
                    depth -= 1
                    u = tail[stack[depth]]
                    it[u] += 1
            if not found:
                break
            push = cap[stack[0]]
            for k in range(1, depth):
                if cap[stack[k]] < push:
                    push = cap[stack[k]]
            for k in range(depth):
                a = stack[k]
                cap[a] -= push
                cap[rev[a]] += push
            total += push
    return total


@njit(cache=True)
def _reach_from(n_nodes, first, head, cap, s):
    seen = np.zeros(n_nodes, np.bool_)
    queue = np.empty(n_nodes, np.int64)
    seen[s] = True
    queue[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for a in range(first[u], first[u + 1]):
            v = head[a]
            if cap[a] > 0 and not seen[v]:
                seen[v] = True
                queue[qt] = v
                qt += 1
    return seen


@njit(cache=True)
def _reach_to(n_nodes, first, head, rev, cap, t):
    # v reaches t iff some residual arc v -> w has w reaching t; arc rev[a]
    # runs head[a] -> u for every arc a leaving u.
    seen = np.zeros(n_nodes, np.bool_)
    queue = np.empty(n_nodes, np.int64)
    seen[t] = True
    queue[0] = t
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for a in range(first[u], first[u + 1]):
            v = head[a]
            if cap[rev[a]] > 0 and not seen[v]:
                seen[v] = True
                queue[qt] = v
                qt += 1
    return seen


class FlowNetwork:
    """A directed network with integer capacities.

    Arcs are added with :meth:`add_arc`, then :meth:`freeze` builds the CSR
    arrays.  :meth:`max_flow` never mutates the stored capacities, so one
    network serves many queries that differ only in a few arc capacities.
    """

    def __init__(self, n_nodes: int, source: int = 0, sink: int = 1) -> None:
        self.n_nodes = n_nodes
        self.source = source
        self.sink = sink
        self._chunks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self._count = 0
        self._frozen = False

    def add_arc(self, u: int, v: int, cap: int) -> int:
        return int(self.add_arcs([u], [v], [cap])[0])

    def add_arcs(self, tails, heads, caps) -> np.ndarray:
        """Add arcs in bulk; returns their ids."""
        if self._frozen:
            raise RuntimeError("network is frozen")
        t = np.asarray(tails, dtype=np.int64)
        h = np.asarray(heads, dtype=np.int64)
        c = np.asarray(caps, dtype=np.int64)
        if not (t.shape == h.shape == c.shape):
            raise ValueError("tails, heads and caps must have equal length")
        if (c < 0).any():
            raise ValueError("arc capacities must be non-negative")
        self._chunks.append((t, h, c))
        ids = np.arange(self._count, self._count + len(c))
        self._count += len(c)
        return ids

    def freeze(self) -> None:
        m = self._count
        empty = np.empty(0, dtype=np.int64)
        fwd_t = np.concatenate([ch[0] for ch in self._chunks]) if self._chunks else empty
        fwd_h = np.concatenate([ch[1] for ch in self._chunks]) if self._chunks else empty
        fwd_c = np.concatenate([ch[2] for ch in self._chunks]) if self._chunks else empty
        tails = np.concatenate([fwd_t, fwd_h])
        heads = np.concatenate([fwd_h, fwd_t])
        caps = np.concatenate([fwd_c, np.zeros(m, dtype=np.int64)])
        pair = np.concatenate([np.arange(m, 2 * m), np.arange(0, m)])
        order = np.argsort(tails, kind="stable")
        position = np.empty(2 * m, dtype=np.int64)
        position[order] = np.arange(2 * m)
        self.tail = tails[order]
        self.head = heads[order]
        self.cap = caps[order]
        self.rev = position[pair[order]]
        self.first = np.searchsorted(self.tail, np.arange(self.n_nodes + 1)).astype(np.int64)
        # position of each forward arc, by insertion index
        self.arc_position = position[:m]
        self._frozen = True

    def max_flow(
        self,
        overrides: dict[int, int] | None = None,
        warm: tuple[int, np.ndarray] | None = None,
    ) -> tuple[int, np.ndarray]:
        """Return the max-flow value and the residual capacity array.

        ``overrides`` maps arc ids (as returned by :meth:`add_arc`) to
        replacement capacities for this query only.  With ``warm = (value,
        residual)`` from an earlier query, the search resumes from that flow;
        ``overrides`` are then read as increases over the earlier capacities
        and must not lower any of them.
        """
        if not self._frozen:
            self.freeze()
        if warm is None:
            start = 0
            cap = self.cap.copy()
            if overrides:
                for arc, value in overrides.items():
                    cap[self.arc_position[arc]] = value
        else:
            start, residual = warm
            cap = residual.copy()
            if overrides:
                for arc, delta in overrides.items():
                    if delta < 0:
                        raise ValueError("warm starts cannot lower a capacity")
                    cap[self.arc_position[arc]] += delta
        value = _dinic(self.n_nodes, self.first, self.head, self.tail, self.rev, cap, self.source, self.sink)
        return start + int(value), cap

    def source_reachable(self, residual: np.ndarray) -> np.ndarray:
        """Nodes reachable from the source: the smallest min-cut source side."""
        return _reach_from(self.n_nodes, self.first, self.head, residual, self.source)

    def sink_reaching(self, residual: np.ndarray) -> np.ndarray:
        """Nodes that can still reach the sink; the complement is the largest source side."""
        return _reach_to(self.n_nodes, self.first, self.head, self.rev, residual, self.sink)
