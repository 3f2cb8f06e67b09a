"""Bipartite graph model, generators, random edge partitioning and edge-list I/O.

Vertices are dense integer indices on each side: ``P = range(p_count)`` and
``Q = range(q_count)``.  An edge is the pair ``(p, q)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

Edge = tuple[int, int]

P_SIDE = "P"
Q_SIDE = "Q"


class VertexRef(NamedTuple):
    side: str
    index: int

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


@dataclass(frozen=True, eq=True)
class BipartiteGraph:
    """Simple bipartite graph ``G = (P, Q, E)``.  Immutable; build with :func:`build_graph`."""

    p_count: int
    q_count: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.p_count < 0 or self.q_count < 0:
            raise ValueError("vertex counts must be non-negative")
        for p, q in self.edges:
            if not (0 <= p < self.p_count and 0 <= q < self.q_count):
                raise ValueError(
                    f"edge ({p}, {q}) out of range for |P|={self.p_count}, |Q|={self.q_count}"
                )

    @property
    def n(self) -> int:
        return self.p_count + self.q_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        """Edges in lexicographic order; the ordinal used by the partitioner."""
        return tuple(sorted(self.edges))

    @cached_property
    def adj_p(self) -> tuple[tuple[int, ...], ...]:
        """Ascending Q-neighbours of every P-vertex."""
        adj: list[list[int]] = [[] for _ in range(self.p_count)]
        for p, q in self.sorted_edges:
            adj[p].append(q)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def adj_q(self) -> tuple[tuple[int, ...], ...]:
        """Ascending P-neighbours of every Q-vertex."""
        adj: list[list[int]] = [[] for _ in range(self.q_count)]
        for p, q in self.sorted_edges:
            adj[q].append(p)
        return tuple(tuple(a) for a in adj)

    def has_vertex(self, v: VertexRef) -> bool:
        bound = self.p_count if v.side == P_SIDE else self.q_count if v.side == Q_SIDE else -1
        return 0 <= v.index < bound

    def with_edges(self, edges: Iterable[Edge]) -> "BipartiteGraph":
        """Same vertex sets, different edge set."""
        return build_graph(self.p_count, self.q_count, edges)

    def __repr__(self) -> str:
        return f"BipartiteGraph(p_count={self.p_count}, q_count={self.q_count}, m={self.m})"


class PartitionResult(NamedTuple):
    parts: list[BipartiteGraph]
    seed: int


def build_graph(p_count: int, q_count: int, edge_list: Iterable[Sequence[int]]) -> BipartiteGraph:
    """Build a graph, collapsing duplicate edges.  Out-of-range endpoints raise ``ValueError``."""
    edges = frozenset((int(p), int(q)) for p, q in edge_list)
    return BipartiteGraph(p_count, q_count, edges)


def neighbors(g: BipartiteGraph, s: Iterable[int]) -> set[int]:
    """Gamma(S): the Q-vertices adjacent to at least one P-vertex of ``s``."""
    out: set[int] = set()
    for p in s:
        if not 0 <= p < g.p_count:
            raise ValueError(f"P-index {p} out of range")
        out.update(g.adj_p[p])
    return out


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in 64 unsigned bits")
    return seed


def random_k_partition(g: BipartiteGraph, k: int, seed: int) -> PartitionResult:
    """Send every edge to one of ``k`` parts independently and uniformly.

    Destinations come from a Philox counter-based stream keyed by ``seed``;
    the i-th draw belongs to the i-th edge in lexicographic order, so the
    result does not depend on insertion order or on who calls it from where.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    seed = _check_seed(seed)
    edges = g.sorted_edges
    if k == 1:
        dest = np.zeros(len(edges), dtype=np.int64)
    else:
        rng = np.random.Generator(np.random.Philox(key=seed))
        dest = rng.integers(0, k, size=len(edges))
    buckets: list[list[Edge]] = [[] for _ in range(k)]
    for e, d in zip(edges, dest.tolist()):
        buckets[d].append(e)
    parts = [BipartiteGraph(g.p_count, g.q_count, frozenset(b)) for b in buckets]
    return PartitionResult(parts, seed)


def union_graphs(parts: Sequence[BipartiteGraph]) -> BipartiteGraph:
    if not parts:
        raise ValueError("need at least one graph")
    p_count, q_count = parts[0].p_count, parts[0].q_count
    edges: set[Edge] = set()
    for part in parts:
        if (part.p_count, part.q_count) != (p_count, q_count):
            raise ValueError(
                f"vertex counts differ: ({part.p_count}, {part.q_count}) vs ({p_count}, {q_count})"
            )
        edges |= part.edges
    return BipartiteGraph(p_count, q_count, frozenset(edges))


# --- generators -------------------------------------------------------------


def gen_perfect(t: int) -> BipartiteGraph:
    """``t`` disjoint edges ``(i, i)``."""
    return build_graph(t, t, ((i, i) for i in range(t)))


def gen_random_bipartite(p_count: int, q_count: int, prob: float, seed: int) -> BipartiteGraph:
    """Each of the ``p_count * q_count`` pairs is kept independently with probability ``prob``."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"prob must lie in [0, 1], got {prob}")
    rng = np.random.Generator(np.random.Philox(key=_check_seed(seed)))
    mask = rng.random((p_count, q_count)) < prob
    ps, qs = np.nonzero(mask)
    return build_graph(p_count, q_count, zip(ps.tolist(), qs.tolist()))


class PathologicalLayout(NamedTuple):
    """Index ranges of the six vertex groups of :func:`gen_pathological`."""

    p1: range
    p2: range
    p3: range
    q1: range
    q2: range
    q3: range


def pathological_layout(r: int, k: int) -> PathologicalLayout:
    if r < 1 or k < 1:
        raise ValueError("r and k must be positive")
    if (2 * r) % k:
        raise ValueError(f"2r = {2 * r} is not divisible by k = {k}")
    big = r + 2 * r // k
    return PathologicalLayout(
        p1=range(0, r),
        p2=range(r, 2 * r),
        p3=range(2 * r, 2 * r + big),
        q1=range(0, big),
        q2=range(big, big + r),
        q3=range(big + r, big + 2 * r),
    )


def gen_pathological(r: int, k: int) -> BipartiteGraph:
    """Six-group graph on which adversarial skeletons lose a third of the matching.

    ``|P1| = |P2| = |Q2| = |Q3| = r`` and ``|Q1| = |P3| = r + 2r/k``; see
    :func:`pathological_layout` for the index ranges.  Edges: P1 matched to the
    first ``r`` vertices of Q1, Q1 x P2 complete, P2 matched to Q2, Q2 x P3
    complete, the first ``r`` vertices of P3 matched to Q3.
    """
    lay = pathological_layout(r, k)
    edges: list[Edge] = []
    edges += zip(lay.p1, lay.q1[:r])
    edges += ((p, q) for p in lay.p2 for q in lay.q1)
    edges += zip(lay.p2, lay.q2)
    edges += ((p, q) for p in lay.p3 for q in lay.q2)
    edges += zip(lay.p3[:r], lay.q3)
    return build_graph(lay.p3.stop, lay.q3.stop, edges)


# --- edge-list text format --------------------------------------------------


def format_edge_list(g: BipartiteGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append(f"p {g.p_count} {g.q_count} {g.m}")
    lines += [f"e {p} {q}" for p, q in g.sorted_edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, strict: bool = False) -> BipartiteGraph:
    """Parse the ``p``/``e`` edge-list format.

    Duplicate edges raise ``ValueError`` when ``strict`` and otherwise emit a
    ``UserWarning`` and are collapsed.
    """
    header: tuple[int, int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "p" and len(tok) == 4:
                if header is not None:
                    raise ValueError("second header line")
                header = (int(tok[1]), int(tok[2]), int(tok[3]))
            elif tok[0] == "e" and len(tok) == 3:
                if header is None:
                    raise ValueError("edge before header")
                edges.append((int(tok[1]), int(tok[2])))
            else:
                raise ValueError(f"unrecognised line {line!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if header is None:
        raise ValueError("missing 'p <p_count> <q_count> <m>' header")
    p_count, q_count, m = header
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    unique = set(edges)
    if len(unique) != len(edges):
        msg = f"{len(edges) - len(unique)} duplicate edge(s)"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg + " collapsed", UserWarning, stacklevel=2)
    return build_graph(p_count, q_count, unique)


def read_edge_list(path, strict: bool = False) -> BipartiteGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), strict=strict)


def write_edge_list(g: BipartiteGraph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g, comment))


def iter_vertices(g: BipartiteGraph) -> Iterator[VertexRef]:
    for p in range(g.p_count):
        yield VertexRef(P_SIDE, p)
    for q in range(g.q_count):
        yield VertexRef(Q_SIDE, q)
