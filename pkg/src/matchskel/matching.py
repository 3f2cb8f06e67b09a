"""Integral and fractional matchings, vertex covers, and their verifiers."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graphcore import P_SIDE, Q_SIDE, BipartiteGraph, Edge, VertexRef

Matching = frozenset  # frozenset[Edge]
FractionalMatching = Mapping[Edge, Fraction]

BRUTE_FORCE_MAX_EDGES = 25


@dataclass
class Verdict:
    """Outcome of a verifier: truthy iff no violations were found."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, msg: str) -> None:
        self.violations.append(msg)


def maximum_matching(g: BipartiteGraph) -> frozenset[Edge]:
    """Hopcroft-Karp.  Vertices and neighbours are scanned in ascending order."""
    INF = len(g.adj_p) + 1
    adj = g.adj_p
    match_p = [-1] * g.p_count
    match_q = [-1] * g.q_count
    dist = [0] * g.p_count

    def bfs() -> bool:
        queue = deque()
        for p in range(g.p_count):
            if match_p[p] < 0:
                dist[p] = 0
                queue.append(p)
            else:
                dist[p] = INF
        found = False
        while queue:
            p = queue.popleft()
            for q in adj[p]:
                p2 = match_q[q]
                if p2 < 0:
                    found = True
                elif dist[p2] == INF:
                    dist[p2] = dist[p] + 1
                    queue.append(p2)
        return found

    def dfs(root: int) -> bool:
        # iterative layered DFS; stack holds (p, next neighbour position)
        stack = [[root, 0]]
        via: list[int] = []
        while stack:
            frame = stack[-1]
            p, i = frame
            nbrs = adj[p]
            advanced = False
            while i < len(nbrs):
                q = nbrs[i]
                i += 1
                p2 = match_q[q]
                if p2 < 0:
                    frame[1] = i
                    via.append(q)
                    # augment along the stack
                    for (pp, _), qq in zip(stack, via):
                        match_p[pp] = qq
                        match_q[qq] = pp
                    return True
                if dist[p2] == dist[p] + 1:
                    frame[1] = i
                    via.append(q)
                    stack.append([p2, 0])
                    advanced = True
                    break
            if advanced:
                continue
            dist[p] = INF
            stack.pop()
            if via:
                via.pop()
        return False

    while bfs():
        for p in range(g.p_count):
            if match_p[p] < 0:
                dfs(p)
    return frozenset((p, q) for p, q in enumerate(match_p) if q >= 0)


def is_matching(g: BipartiteGraph, pairs: Iterable[Edge]) -> Verdict:
    v = Verdict()
    seen_p: set[int] = set()
    seen_q: set[int] = set()
    for p, q in pairs:
        if (p, q) not in g.edges:
            v.fail(f"({p}, {q}) is not an edge")
        if p in seen_p:
            v.fail(f"P{p} matched twice")
        if q in seen_q:
            v.fail(f"Q{q} matched twice")
        seen_p.add(p)
        seen_q.add(q)
    return v


def brute_force_matching(g: BipartiteGraph) -> frozenset[Edge]:
    """Exhaustive search over all matchings; test oracle for graphs with at most 25 edges."""
    if g.m > BRUTE_FORCE_MAX_EDGES:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_EDGES} edges, got {g.m}")
    ps = [p for p in range(g.p_count) if g.adj_p[p]]
    used_q: set[int] = set()
    best: list[Edge] = []
    cur: list[Edge] = []

    def rec(i: int) -> None:
        nonlocal best
        if len(cur) + (len(ps) - i) <= len(best):
            return
        if i == len(ps):
            best = list(cur)
            return
        p = ps[i]
        for q in g.adj_p[p]:
            if q not in used_q:
                used_q.add(q)
                cur.append((p, q))
                rec(i + 1)
                cur.pop()
                used_q.discard(q)
        rec(i + 1)

    rec(0)
    return frozenset(best)


def minimum_vertex_cover(g: BipartiteGraph, matching: Iterable[Edge]) -> frozenset[VertexRef]:
    """König cover from a maximum matching.

    Let Z be the vertices reachable from unmatched P-vertices by alternating
    paths (non-matching edges P->Q, matching edges Q->P).  The cover is
    ``(P - Z) | (Q & Z)``.
    """
    match_p = dict(matching)
    match_q = {q: p for p, q in match_p.items()}
    seen_p = [False] * g.p_count
    seen_q = [False] * g.q_count
    stack = [p for p in range(g.p_count) if p not in match_p]
    for p in stack:
        seen_p[p] = True
    while stack:
        p = stack.pop()
        for q in g.adj_p[p]:
            if seen_q[q] or match_p.get(p) == q:
                continue
            seen_q[q] = True
            p2 = match_q.get(q)
            if p2 is not None and not seen_p[p2]:
                seen_p[p2] = True
                stack.append(p2)
    cover = [VertexRef(P_SIDE, p) for p in range(g.p_count) if not seen_p[p]]
    cover += [VertexRef(Q_SIDE, q) for q in range(g.q_count) if seen_q[q]]
    return frozenset(cover)


def is_vertex_cover(g: BipartiteGraph, cover: Iterable[VertexRef]) -> Verdict:
    cover = set(cover)
    v = Verdict()
    for ref in cover:
        if not g.has_vertex(ref):
            v.fail(f"{ref} not in graph")
    for p, q in g.sorted_edges:
        if VertexRef(P_SIDE, p) not in cover and VertexRef(Q_SIDE, q) not in cover:
            v.fail(f"edge ({p}, {q}) uncovered")
    return v


def vertex_loads(x: FractionalMatching) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Per-vertex sums of incident weight, exact."""
    load_p: dict[int, Fraction] = {}
    load_q: dict[int, Fraction] = {}
    for (p, q), w in x.items():
        load_p[p] = load_p.get(p, Fraction(0)) + w
        load_q[q] = load_q.get(q, Fraction(0)) + w
    return load_p, load_q


def verify_fractional_matching(g: BipartiteGraph, x: FractionalMatching) -> Verdict:
    """Weights in (0, 1] on edges of ``g`` with every vertex load at most 1.

    Explicit zero weights are tolerated here; only keyed positive weights count.
    """
    v = Verdict()
    for e, w in x.items():
        if e not in g.edges:
            v.fail(f"{e} is not an edge")
        if not isinstance(w, (int, Fraction)):
            v.fail(f"{e} has inexact weight {w!r}")
        elif w < 0 or w > 1:
            v.fail(f"{e} weight {w} outside [0, 1]")
    load_p, load_q = vertex_loads(x)
    for side, loads in ((P_SIDE, load_p), (Q_SIDE, load_q)):
        for u, s in sorted(loads.items()):
            if s > 1:
                v.fail(f"{side}{u} load {s} > 1")
    return v


def verify_alpha_matching(
    g_block: BipartiteGraph, x: FractionalMatching, alpha: Fraction, p_set: Iterable[int]
) -> Verdict:
    """Every ``p`` in ``p_set`` carries exactly ``alpha``; every Q-vertex at most 1."""
    v = Verdict()
    p_set = set(p_set)
    alpha = Fraction(alpha)
    for e, w in x.items():
        if e not in g_block.edges:
            v.fail(f"{e} is not an edge of the block")
        if w < 0 or w > 1:
            v.fail(f"{e} weight {w} outside [0, 1]")
        if e[0] not in p_set:
            v.fail(f"{e} leaves the P-set")
    load_p, load_q = vertex_loads(x)
    for p in sorted(p_set):
        got = load_p.get(p, Fraction(0))
        if got != alpha:
            v.fail(f"P{p} load {got} != {alpha}")
    for q, s in sorted(load_q.items()):
        if s > 1:
            v.fail(f"Q{q} load {s} > 1")
    return v
