"""Matching skeletons: forest-supported alpha-matchings, one per block."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .decomposition import (
    Block,
    BlockDecomposition,
    _feasible,
    block_decomposition,
)
from .graphcore import BipartiteGraph, Edge
from .matching import Verdict, maximum_matching, vertex_loads


class InconsistentBlockError(RuntimeError):
    """A block admitted no alpha-matching; it did not come from a decomposition of the graph."""


@dataclass(frozen=True)
class Skeleton:
    weights: Mapping[Edge, Fraction]
    decomposition: BlockDecomposition

    @property
    def support(self) -> frozenset[Edge]:
        return frozenset(e for e, w in self.weights.items() if w > 0)

    def support_graph(self, g: BipartiteGraph) -> BipartiteGraph:
        return g.with_edges(self.support)

    def __len__(self) -> int:
        return len(self.support)


class Refusal(NamedTuple):
    """No skeleton avoids the forbidden edges by the robustness argument."""

    edge: Edge
    alpha_p: Fraction
    alpha_q: Fraction | float


def block_alpha_matching(g: BipartiteGraph, block: Block) -> dict[Edge, Fraction]:
    """Exact alpha-matching of ``P_i`` into ``Q_i``, read off an integral max-flow.

    Flow on ``p -> q`` in the network scaled by the level's denominator,
    divided by that denominator.
    """
    if block.alpha == 0:
        return {}
    ps = sorted(block.p_set)
    dead = frozenset(q for p in ps for q in g.adj_p[p] if q not in block.q_set)
    ok, res, pq = _feasible(g.adj_p, ps, dead, block.alpha)
    if not ok:
        raise InconsistentBlockError(f"no {block.alpha}-matching on a block of {len(ps)} P-vertices")
    den = block.alpha.denominator
    flows = res.arc_flow[len(ps):len(ps) + len(pq)]
    return {e: Fraction(f, den) for e, f in zip(pq, flows) if f}


def _tree_path(tree: dict[int, set[int]], src: int, dst: int) -> list[int] | None:
    """Vertex path from ``src`` to ``dst`` in a forest, or None if they are disconnected."""
    prev = {src: src}
    queue = deque([src])
    while queue and dst not in prev:
        u = queue.popleft()
        for w in tree[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    if dst not in prev:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def _edge(a: int, b: int) -> Edge:
    # P-vertex p is tagged p, Q-vertex q is tagged ~q
    return (a, ~b) if a >= 0 else (b, ~a)


def eliminate_cycles(x: Mapping[Edge, Fraction]) -> dict[Edge, Fraction]:
    """Cancel support cycles while keeping every vertex load exactly.

    Edges are inserted into a forest in ascending order.  An edge closing a
    cycle ``e0, e1, ..., e_{2l-1}`` (``e0`` the new edge) moves ``+eps`` onto
    even positions and ``-eps`` off odd ones, ``eps`` being the smallest
    odd-position weight, so at least one forest edge drops out.
    """
    w: dict[Edge, Fraction] = {e: Fraction(v) for e, v in x.items() if v > 0}
    tree: dict[int, set[int]] = {}
    # union-find over-approximates connectivity after deletions; it only
    # gates the exact path search
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for e in sorted(w):
        u, v = e[0], ~e[1]
        for t in (u, v):
            if t not in tree:
                tree[t] = set()
                parent[t] = t
        ru, rv = find(u), find(v)
        path = _tree_path(tree, v, u) if ru == rv else None
        if path is not None:
            cyc = [e] + [_edge(a, b) for a, b in zip(path, path[1:])]
            plus, minus = cyc[0::2], cyc[1::2]
            eps = min(w[f] for f in minus)
            for f in plus:
                w[f] += eps
            for f in minus:
                w[f] -= eps
                if w[f] == 0:
                    del w[f]
                    tree[f[0]].discard(~f[1])
                    tree[~f[1]].discard(f[0])
            if any(w[f] > 1 for f in plus):
                raise AssertionError("cycle cancellation pushed a weight above 1")
        parent[ru] = rv
        tree[u].add(v)
        tree[v].add(u)
    return w


def matching_skeleton(g: BipartiteGraph, d: BlockDecomposition | None = None) -> Skeleton:
    """Union of cycle-free alpha-matchings over the blocks of ``g``."""
    if d is None:
        d = block_decomposition(g)
    weights: dict[Edge, Fraction] = {}
    for block in d.blocks:
        weights.update(eliminate_cycles(block_alpha_matching(g, block)))
    return Skeleton(dict(sorted(weights.items())), d)


def scaled_fractional_matching(h: Skeleton) -> dict[Edge, Fraction]:
    """Divide weights in blocks of level >= 1 by the level.

    The result is a fractional matching whose size equals the canonical
    cover size, i.e. the maximum matching size.
    """
    d = h.decomposition
    return {
        e: (w / d.alpha_p(e[0]) if d.alpha_p(e[0]) >= 1 else w) for e, w in h.weights.items()
    }


def skeleton_avoiding(g: BipartiteGraph, forbidden: Iterable[Edge]) -> Skeleton | Refusal:
    """A skeleton of ``g`` using no ``forbidden`` edge, or the edge that blocks the argument.

    The skeleton of ``g`` minus the forbidden edges stays a skeleton of ``g``
    when every forbidden edge ``(p, q)`` of ``g`` has ``alpha(p) >= alpha(q)``
    in the reduced graph's decomposition.
    """
    present = sorted(set(forbidden) & g.edges)
    if not present:
        return matching_skeleton(g)
    reduced = g.with_edges(g.edges - set(present))
    d = block_decomposition(reduced)
    for p, q in present:
        ap, aq = d.alpha_p(p), d.alpha_q(q)
        if ap < aq:
            return Refusal((p, q), ap, aq)
    return matching_skeleton(reduced, d)


def verify_skeleton(g: BipartiteGraph, h: Skeleton) -> Verdict:
    """Forest support, block purity, exact saturation, and matching preservation."""
    v = Verdict()
    d = h.decomposition
    for e, w in h.weights.items():
        if e not in g.edges:
            v.fail(f"{e} is not an edge")
        if not 0 < w <= 1:
            v.fail(f"{e} weight {w} outside (0, 1]")
    support = sorted(h.support)
    if len(support) > max(g.n - 1, 0):
        v.fail(f"support has {len(support)} edges > n - 1 = {g.n - 1}")
    parent: dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    block_of_p = {p: i for i, b in enumerate(d.blocks) for p in b.p_set}
    block_of_q = {q: i for i, b in enumerate(d.blocks) for q in b.q_set}
    for p, q in support:
        ra, rb = find(("P", p)), find(("Q", q))
        if ra == rb:
            v.fail(f"support edge ({p}, {q}) closes a cycle")
        else:
            parent[ra] = rb
        if block_of_p.get(p) != block_of_q.get(q):
            v.fail(f"support edge ({p}, {q}) crosses blocks")
    load_p, load_q = vertex_loads(h.weights)
    for q, total in sorted(load_q.items()):
        if total > 1:
            v.fail(f"Q{q} load {total} > 1")
    for b in d.blocks:
        for p in b.p_set:
            if load_p.get(p, Fraction(0)) != b.alpha:
                v.fail(f"P{p} load {load_p.get(p, 0)} != level {b.alpha}")
    if len(maximum_matching(g.with_edges(g.edges.intersection(support)))) != len(maximum_matching(g)):
        v.fail("support loses maximum matching size")
    return v
