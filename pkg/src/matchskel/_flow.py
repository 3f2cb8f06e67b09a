"""Integer max-flow: a pure-Python Dinic plus a scipy-backed solver for large networks.

Arcs are stored in paired arrays: arc ``e`` and its residual twin ``e ^ 1``.
Adjacency lists keep insertion order, so results are deterministic for a
fixed construction order.
"""
from __future__ import annotations

from collections import deque
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.head: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        """Add ``u -> v`` with capacity ``cap``; return the arc id."""
        e = len(self.head)
        self.head += (v, u)
        self.cap += (cap, 0)
        self.orig += (cap, 0)
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    @classmethod
    def from_arcs(cls, n: int, tails: list[int], heads: list[int], caps: list[int]) -> "FlowNetwork":
        """Bulk constructor; arc ``i`` of the input gets id ``2 * i``."""
        net = cls(n)
        m = len(tails)
        head = [0] * (2 * m)
        head[0::2] = heads
        head[1::2] = tails
        cap = [0] * (2 * m)
        cap[0::2] = caps
        net.head, net.cap, net.orig = head, cap, list(cap)
        adj = net.adj
        for i, (u, v) in enumerate(zip(tails, heads)):
            adj[u].append(2 * i)
            adj[v].append(2 * i + 1)
        return net

    def flow_on(self, e: int) -> int:
        return self.orig[e] - self.cap[e]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        head, cap, adj = self.head, self.cap, self.adj
        queue = deque([s])
        while queue:
            u = queue.popleft()
            nxt = level[u] + 1
            for e in adj[u]:
                v = head[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = nxt
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        head, cap, adj = self.head, self.cap, self.adj
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            # one augmenting path per pass of the loop; dead ends are pruned
            # by clearing their level
            path: list[int] = []
            u = s
            while True:
                if u == t:
                    f = min(cap[e] for e in path)
                    for e in path:
                        cap[e] -= f
                        cap[e ^ 1] += f
                    total += f
                    path.clear()
                    u = s
                    continue
                edges = adj[u]
                i = it[u]
                want = level[u] + 1
                while i < len(edges):
                    e = edges[i]
                    if cap[e] > 0 and level[head[e]] == want:
                        break
                    i += 1
                it[u] = i
                if i < len(edges):
                    e = edges[i]
                    path.append(e)
                    u = head[e]
                    continue
                if u == s:
                    break
                level[u] = -1
                e = path.pop()
                u = head[e ^ 1]
                it[u] += 1

    def reaches(self, t: int) -> list[bool]:
        """Vertices with a residual path to ``t``."""
        seen = [False] * self.n
        seen[t] = True
        head, cap, adj = self.head, self.cap, self.adj
        stack = [t]
        while stack:
            v = stack.pop()
            for e in adj[v]:
                w = head[e]
                # arc e ^ 1 goes w -> v
                if not seen[w] and cap[e ^ 1] > 0:
                    seen[w] = True
                    stack.append(w)
        return seen

    def reachable_from(self, s: int) -> list[bool]:
        """Vertices reachable from ``s`` in the residual network."""
        seen = [False] * self.n
        seen[s] = True
        head, cap, adj = self.head, self.cap, self.adj
        stack = [s]
        while stack:
            u = stack.pop()
            for e in adj[u]:
                v = head[e]
                if not seen[v] and cap[e] > 0:
                    seen[v] = True
                    stack.append(v)
        return seen


class FlowResult(NamedTuple):
    value: int
    arc_flow: list[int]
    """Flow on each input arc, in input order."""
    from_source: list[bool]
    """Nodes reachable from the source in the residual network."""
    to_sink: list[bool]
    """Nodes with a residual path to the sink."""


INT32_MAX = 2**31 - 1
SCIPY_MIN_ARCS = 3000


def solve(
    n: int,
    tails: list[int],
    heads: list[int],
    caps: list[int],
    s: int = 0,
    t: int = 1,
    backend: str | None = None,
) -> FlowResult:
    """Maximum ``s``-``t`` flow with residual reachability.

    The network must not contain parallel or antiparallel arcs.  ``backend``
    is ``"dinic"`` (pure Python), ``"scipy"``, or None to pick scipy for
    large networks whose capacities fit in 32 bits.
    """
    if backend is None:
        backend = "scipy" if len(tails) >= SCIPY_MIN_ARCS and max(caps, default=0) <= INT32_MAX else "dinic"
    if backend == "dinic":
        net = FlowNetwork.from_arcs(n, tails, heads, caps)
        value = net.max_flow(s, t)
        flows = [o - c for o, c in zip(net.orig[0::2], net.cap[0::2])]
        return FlowResult(value, flows, net.reachable_from(s), net.reaches(t))
    if backend != "scipy":
        raise ValueError(f"unknown backend {backend!r}")
    if max(caps, default=0) > INT32_MAX:
        raise OverflowError("capacities exceed the 32-bit range of the scipy backend")
    rows = np.asarray(tails, dtype=np.int32)
    cols = np.asarray(heads, dtype=np.int32)
    cap = csr_matrix((np.asarray(caps, dtype=np.int32), (rows, cols)), shape=(n, n))
    res = maximum_flow(cap, s, t, method="dinic")
    flow = res.flow.tocsr()
    arc_flow = np.asarray(flow[rows, cols]).ravel()
    residual = (cap - flow).tocsr()
    residual.data[residual.data < 0] = 0
    residual.eliminate_zeros()
    fwd = np.zeros(n, dtype=bool)
    fwd[breadth_first_order(residual, s, directed=True, return_predecessors=False)] = True
    back = np.zeros(n, dtype=bool)
    back[breadth_first_order(residual.T.tocsr(), t, directed=True, return_predecessors=False)] = True
    return FlowResult(int(res.flow_value), arc_flow.tolist(), fwd.tolist(), back.tolist())
