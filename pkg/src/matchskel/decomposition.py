"""Exact block decomposition of a bipartite graph by expansion level.

Starting from ``G_0 = G``, each step finds the minimum expansion
``alpha_i = min |Gamma(S)| / |S|`` over nonempty ``S`` among the remaining
P-vertices, takes the largest minimiser ``P_i`` and its neighbourhood
``Q_i``, and deletes both.  All levels are exact ``Fraction`` values.

Minimum expansion is found on the scaled network

    s --a--> p --(inf)--> q --b--> t        for alpha = a / b,

whose minimum cut is ``a|P| + min_S (b|Gamma(S)| - a|S|)``.  A flow of
value ``a|P|`` certifies that an alpha-matching exists, i.e. that no set
expands by less than alpha.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._flow import FlowResult, solve
from .graphcore import P_SIDE, Q_SIDE, BipartiteGraph, Edge, VertexRef
from .matching import Verdict

INFINITY = math.inf
"""Expansion level of Q-vertices that never enter a block (isolated ones)."""

BRUTE_FORCE_MAX_P = 16


@dataclass(frozen=True)
class Block:
    p_set: frozenset[int]
    q_set: frozenset[int]
    alpha: Fraction


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    leftover_q: frozenset[int]

    @cached_property
    def _alpha_p(self) -> dict[int, Fraction]:
        return {p: b.alpha for b in self.blocks for p in b.p_set}

    @cached_property
    def _alpha_q(self) -> dict[int, Fraction]:
        return {q: b.alpha for b in self.blocks for q in b.q_set}

    def alpha_p(self, p: int) -> Fraction:
        return self._alpha_p[p]

    def alpha_q(self, q: int) -> Fraction | float:
        return INFINITY if q in self.leftover_q else self._alpha_q[q]


# --- exact rational helpers -------------------------------------------------


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval ``[lo, hi]``.

    Continued-fraction descent of the Stern-Brocot tree; ``0 <= lo <= hi``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi or lo < 0:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


# --- flow kernels -------------------------------------------------------------
#
# These operate on raw adjacency (``adj[p]`` = Q-neighbours) and an optional
# set of removed Q-vertices, so the decomposition can run them on residual
# graphs without rebuilding BipartiteGraph objects.


def _gamma(adj: Sequence[Sequence[int]], ps: Iterable[int], dead_q: frozenset[int] | set[int]) -> set[int]:
    out: set[int] = set()
    for p in ps:
        out.update(adj[p])
    return out - dead_q if dead_q else out


def _scaled_network(adj, ps: Sequence[int], dead_q, a: int, b: int):
    """Arc lists of the scaled network for alpha = a/b.

    Node 0 is the source, 1 the sink, ``2 + i`` the i-th P-vertex of ``ps``
    and Q-vertices follow in ascending order.  Returns ``(n, tails, heads,
    caps, pq)`` where ``pq[j] = (p, q)`` is the P-to-Q arc at input
    position ``len(ps) + j``.
    """
    qs = sorted(_gamma(adj, ps, dead_q))
    base = 2 + len(ps)
    q_node = {q: base + j for j, q in enumerate(qs)}
    big = a * len(ps) + 1
    tails = [0] * len(ps)
    heads = list(range(2, base))
    pq: list[Edge] = []
    for i, p in enumerate(ps):
        for q in adj[p]:
            node = q_node.get(q)
            if node is not None:
                tails.append(2 + i)
                heads.append(node)
                pq.append((p, q))
    caps = [a] * len(ps) + [big] * len(pq) + [b] * len(qs)
    tails += q_node.values()
    heads += [1] * len(qs)
    return base + len(qs), tails, heads, caps, pq


def _feasible(adj, ps: Sequence[int], dead_q, alpha: Fraction, backend: str | None = None):
    """Solve the scaled network; returns ``(feasible, FlowResult, pq)``."""
    a, b = alpha.numerator, alpha.denominator
    n, tails, heads, caps, pq = _scaled_network(adj, ps, dead_q, a, b)
    res = solve(n, tails, heads, caps, backend=backend)
    return res.value == a * len(ps), res, pq


def _largest_tight(res: FlowResult, ps: Sequence[int]) -> frozenset[int]:
    # maximal source side of a minimum cut: everything that cannot reach t
    to_sink = res.to_sink
    return frozenset(p for i, p in enumerate(ps) if not to_sink[2 + i])


def _min_expansion_newton(adj, ps: Sequence[int], dead_q) -> tuple[Fraction, frozenset[int]]:
    # Dinkelbach iteration: each infeasible probe exposes a set with strictly
    # smaller expansion, which becomes the next probe.
    alpha = Fraction(len(_gamma(adj, ps, dead_q)), len(ps))
    while True:
        ok, res, _ = _feasible(adj, ps, dead_q, alpha)
        if ok:
            return alpha, _largest_tight(res, ps)
        src = res.from_source
        cut = [p for i, p in enumerate(ps) if src[2 + i]]
        nxt = Fraction(len(_gamma(adj, cut, dead_q)), len(cut))
        if nxt >= alpha:
            raise AssertionError("expansion probe failed to decrease")
        alpha = nxt


def _min_expansion_bisect(adj, ps: Sequence[int], dead_q) -> tuple[Fraction, frozenset[int]]:
    # Bisect the feasibility threshold to width < 1/(2|P|^2), then snap to the
    # only fraction with denominator <= |P| inside the bracket.
    n = len(ps)
    hi = Fraction(len(_gamma(adj, ps, dead_q)), n)
    ok, res, _ = _feasible(adj, ps, dead_q, hi)
    if not ok:
        lo = Fraction(0)
        width = Fraction(1, 2 * n * n)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            if _feasible(adj, ps, dead_q, mid)[0]:
                lo = mid
            else:
                hi = mid
        alpha = simplest_between(lo, hi)
        if alpha.denominator > n:
            raise AssertionError(f"snapped level {alpha} has denominator > {n}")
        ok, res, _ = _feasible(adj, ps, dead_q, alpha)
        if not ok:
            raise AssertionError(f"snapped level {alpha} is infeasible")
    else:
        alpha = hi
    return alpha, _largest_tight(res, ps)


_METHODS = {"newton": _min_expansion_newton, "bisect": _min_expansion_bisect}


def _check_p_set(g: BipartiteGraph, p_set: Iterable[int]) -> list[int]:
    ps = sorted(set(p_set))
    if not ps:
        raise ValueError("p_set must be nonempty")
    if ps[0] < 0 or ps[-1] >= g.p_count:
        raise ValueError("p_set index out of range")
    return ps


def alpha_feasible(g: BipartiteGraph, alpha: Fraction, p_set: Iterable[int]) -> bool:
    """True iff ``g`` has an alpha-matching with respect to ``p_set``."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    return _feasible(g.adj_p, _check_p_set(g, p_set), frozenset(), alpha)[0]


def min_expansion(
    g: BipartiteGraph, p_set: Iterable[int], method: str = "newton"
) -> tuple[Fraction, frozenset[int]]:
    """Minimum of ``|Gamma(S)| / |S|`` over nonempty ``S`` in ``p_set``, and the largest minimiser.

    ``method`` is ``"newton"`` (Dinkelbach probes) or ``"bisect"``
    (threshold bisection plus rational snap); both are exact.
    """
    return _METHODS[method](g.adj_p, _check_p_set(g, p_set), frozenset())


def brute_force_min_expansion(g: BipartiteGraph, p_set: Iterable[int]) -> tuple[Fraction, frozenset[int]]:
    """Enumerate every nonempty subset; test oracle for at most 16 P-vertices.

    Ties in ratio are broken towards the larger set.
    """
    ps = _check_p_set(g, p_set)
    if len(ps) > BRUTE_FORCE_MAX_P:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_P} P-vertices, got {len(ps)}")
    nb_bits = [sum(1 << q for q in g.adj_p[p]) for p in ps]
    nb = [0] * (1 << len(ps))
    best_num, best_den, best_mask = None, 1, 0
    for mask in range(1, 1 << len(ps)):
        low = mask & -mask
        nb[mask] = nb[mask ^ low] | nb_bits[low.bit_length() - 1]
        num, den = bin(nb[mask]).count("1"), bin(mask).count("1")
        if best_num is None:
            best_num, best_den, best_mask = num, den, mask
            continue
        lhs, rhs = num * best_den, best_num * den
        if lhs < rhs or (lhs == rhs and den > best_den):
            best_num, best_den, best_mask = num, den, mask
    chosen = frozenset(p for i, p in enumerate(ps) if best_mask >> i & 1)
    return Fraction(best_num, best_den), chosen


# --- decomposition ------------------------------------------------------------


def _components(g: BipartiteGraph) -> list[list[int]]:
    """P-vertex sets of the connected components that contain at least one edge."""
    parent = list(range(g.p_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ps in g.adj_q:
        if len(ps) > 1:
            r0 = find(ps[0])
            for p in ps[1:]:
                r = find(p)
                if r != r0:
                    parent[r] = r0
    groups: dict[int, list[int]] = {}
    for p in range(g.p_count):
        if g.adj_p[p]:
            groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def _peel(adj, ps: Sequence[int], method: str) -> list[tuple[Fraction, frozenset[int], frozenset[int]]]:
    out = []
    remaining = list(ps)
    dead_q: set[int] = set()
    minimize = _METHODS[method]
    while remaining:
        alpha, tight = minimize(adj, remaining, dead_q)
        q_block = frozenset(_gamma(adj, tight, dead_q))
        out.append((alpha, tight, q_block))
        dead_q |= q_block
        remaining = [p for p in remaining if p not in tight]
    return out


def block_decomposition(g: BipartiteGraph, method: str = "newton", split: bool = True) -> BlockDecomposition:
    """Peel blocks of strictly increasing expansion until no P-vertex is left.

    With ``split`` the connected components are peeled separately and blocks
    of equal level are merged afterwards; this yields the same decomposition
    as peeling the whole graph, because minimum expansion over a disjoint
    union is the minimum over its parts and the largest minimiser is the
    union of the parts' largest minimisers.
    """
    if split:
        found: list[tuple[Fraction, frozenset[int], frozenset[int]]] = []
        isolated = [p for p in range(g.p_count) if not g.adj_p[p]]
        if isolated:
            found.append((Fraction(0), frozenset(isolated), frozenset()))
        for comp in _components(g):
            found += _peel(g.adj_p, comp, method)
    else:
        found = _peel(g.adj_p, range(g.p_count), method)
    merged: dict[Fraction, tuple[set[int], set[int]]] = {}
    for alpha, ps, qs in found:
        acc = merged.setdefault(alpha, (set(), set()))
        acc[0].update(ps)
        acc[1].update(qs)
    blocks = tuple(
        Block(frozenset(ps), frozenset(qs), alpha) for alpha, (ps, qs) in sorted(merged.items())
    )
    used = set().union(*(b.q_set for b in blocks)) if blocks else set()
    leftover = frozenset(q for q in range(g.q_count) if q not in used)
    return BlockDecomposition(blocks, leftover)


def expansion_of(d: BlockDecomposition, v: VertexRef) -> Fraction | float:
    """Level of the block holding ``v``; :data:`INFINITY` for leftover Q-vertices."""
    if v.side == P_SIDE and v.index in d._alpha_p:
        return d._alpha_p[v.index]
    if v.side == Q_SIDE:
        if v.index in d._alpha_q:
            return d._alpha_q[v.index]
        if v.index in d.leftover_q:
            return INFINITY
    raise KeyError(f"{v} is not covered by the decomposition")


def check_structure(g: BipartiteGraph, d: BlockDecomposition) -> Verdict:
    """Partition, strictly increasing levels, ``alpha_i = |Q_i|/|P_i|`` and neighbourhood containment."""
    v = Verdict()
    blocks = d.blocks
    for i in range(1, len(blocks)):
        if not blocks[i - 1].alpha < blocks[i].alpha:
            v.fail(f"levels not strictly increasing at block {i}: {blocks[i - 1].alpha}, {blocks[i].alpha}")
    seen_p: set[int] = set()
    seen_q: set[int] = set(d.leftover_q)
    if len(seen_q) != len(d.leftover_q):
        v.fail("duplicate leftover Q-vertices")
    for i, b in enumerate(blocks):
        if not b.p_set:
            v.fail(f"block {i} has empty P-set")
            continue
        if seen_p & b.p_set:
            v.fail(f"block {i} repeats P-vertices {sorted(seen_p & b.p_set)}")
        if seen_q & b.q_set:
            v.fail(f"block {i} repeats Q-vertices {sorted(seen_q & b.q_set)}")
        seen_p |= b.p_set
        seen_q |= b.q_set
        if b.alpha != Fraction(len(b.q_set), len(b.p_set)):
            v.fail(f"block {i}: alpha {b.alpha} != |Q|/|P| = {len(b.q_set)}/{len(b.p_set)}")
    if seen_p != set(range(g.p_count)):
        v.fail(f"P-sets do not partition P (missing {sorted(set(range(g.p_count)) - seen_p)[:10]})")
    if seen_q != set(range(g.q_count)):
        v.fail(f"Q-sets and leftover do not partition Q (missing {sorted(set(range(g.q_count)) - seen_q)[:10]})")
    if not v.ok:
        return v
    absorbed: set[int] = set()
    for i, b in enumerate(blocks):
        if _gamma(g.adj_p, b.p_set, absorbed) != b.q_set:
            v.fail(f"block {i}: Q-set is not the residual neighbourhood of its P-set")
        absorbed |= b.q_set
        if not _gamma(g.adj_p, b.p_set, frozenset()) <= absorbed:
            v.fail(f"block {i}: Gamma(P_i) escapes the first {i + 1} Q-sets")
    return v


def verify_decomposition(g: BipartiteGraph, d: BlockDecomposition) -> Verdict:
    """:func:`check_structure`, then re-derive every block from its residual graph.

    Each block must admit its alpha-matching and must be the minimum
    expansion and largest tight set of the residual P-vertices (also by
    brute force once at most 16 remain).
    """
    v = check_structure(g, d)
    if not v.ok:
        return v
    adj = g.adj_p
    absorbed: set[int] = set()
    remaining = list(range(g.p_count))
    for i, b in enumerate(d.blocks):
        absorbed |= b.q_set
        ps = sorted(b.p_set)
        if not _feasible(adj, ps, absorbed - b.q_set, b.alpha)[0]:
            v.fail(f"block {i}: no {b.alpha}-matching exists")
        dead = absorbed - b.q_set
        alpha, tight = _min_expansion_newton(adj, remaining, dead)
        if (alpha, tight) != (b.alpha, b.p_set):
            v.fail(f"block {i}: residual minimum expansion is {alpha} on {len(tight)} vertices")
        if len(remaining) <= BRUTE_FORCE_MAX_P:
            sub = g.with_edges((p, q) for p in remaining for q in adj[p] if q not in dead)
            if brute_force_min_expansion(sub, remaining) != (b.alpha, b.p_set):
                v.fail(f"block {i}: brute-force expansion disagrees")
        remaining = [p for p in remaining if p not in b.p_set]
    return v


def canonical_vertex_cover(g: BipartiteGraph, d: BlockDecomposition) -> frozenset[VertexRef]:
    """Smaller side of every block: Q-vertices below level 1, P-vertices at level 1 or above."""
    cover = [VertexRef(P_SIDE, p) for b in d.blocks if b.alpha >= 1 for p in sorted(b.p_set)]
    cover += [VertexRef(Q_SIDE, q) for b in d.blocks if b.alpha < 1 for q in sorted(b.q_set)]
    return frozenset(cover)


def block_subgraph(g: BipartiteGraph, block: Block) -> BipartiteGraph:
    """Edges of ``g`` inside ``P_i x Q_i``, on the full vertex index range."""
    return g.with_edges((p, q) for p in block.p_set for q in g.adj_p[p] if q in block.q_set)


def check_robustness(
    g: BipartiteGraph,
    d: BlockDecomposition,
    e_plus: Iterable[Edge],
    e_minus: Iterable[Edge],
    skeleton,
) -> bool:
    """Apply ``E+`` / ``E-`` and report whether the decomposition is unchanged.

    ``skeleton`` is a matching skeleton built from ``d`` (or its support edges).
    Raises ``ValueError`` if an ``E-`` edge lies in the skeleton or an ``E+``
    edge ``(p, q)`` has ``alpha(p) < alpha(q)``.
    """
    support = set(getattr(skeleton, "support", skeleton))
    e_plus, e_minus = set(e_plus), set(e_minus)
    clash = sorted(e_minus & support)
    if clash:
        raise ValueError(f"removed edge {clash[0]} belongs to the skeleton")
    for p, q in sorted(e_plus):
        if d.alpha_p(p) < d.alpha_q(q):
            raise ValueError(f"added edge {(p, q)} has alpha(p) < alpha(q)")
    g2 = g.with_edges((g.edges | e_plus) - e_minus)
    return block_decomposition(g2) == d
