"""Randomized composable coreset simulation.

A trial splits the edges of ``G`` across ``k`` players, lets every player
summarise its part (the coreset), unions the summaries on the coordinator
and compares the maximum matching of the union with that of ``G``.
"""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graphcore import (
    BipartiteGraph,
    Edge,
    gen_pathological,
    gen_perfect,
    gen_random_bipartite,
    pathological_layout,
    random_k_partition,
    read_edge_list,
    union_graphs,
)
from .matching import maximum_matching
from .skeleton import Refusal, matching_skeleton, skeleton_avoiding

CSV_COLUMNS = ("trial", "seed", "k", "mm_g", "mm_union", "ratio", "refusals", "max_player_edges")


@dataclass(frozen=True)
class Policy:
    """How each player picks its coreset.

    ``canonical`` sends a matching skeleton, ``avoid`` sends a skeleton that
    skips ``forbidden`` edges whenever the robustness argument allows it,
    ``baseline`` sends one maximum matching.
    """

    name: str
    forbidden: frozenset[Edge] = frozenset()
    label: str = ""

    def __post_init__(self) -> None:
        if self.name not in ("canonical", "avoid", "baseline"):
            raise ValueError(f"unknown policy {self.name!r}")

    def __str__(self) -> str:
        if self.name == "avoid":
            return f"avoid({self.label or f'{len(self.forbidden)} edges'})"
        return self.name


CANONICAL = Policy("canonical")
BASELINE = Policy("baseline")


def avoid(edges: Iterable[Edge], label: str = "") -> Policy:
    return Policy("avoid", frozenset(edges), label)


def decimal6(x: Fraction) -> str:
    """Exact round-half-even rendering with six decimals."""
    scaled = round(Fraction(x) * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{frac:06d}"


@dataclass
class TrialReport:
    mm_g: int
    mm_union: int
    per_player_edges: list[int]
    player_mm: list[int]
    k: int
    seed: int
    policy: str
    refusals: int
    trial: int = 0

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.mm_union, self.mm_g) if self.mm_g else Fraction(1)

    @property
    def max_player_edges(self) -> int:
        return max(self.per_player_edges, default=0)

    def csv_row(self) -> list[str]:
        return [
            str(self.trial), str(self.seed), str(self.k), str(self.mm_g), str(self.mm_union),
            decimal6(self.ratio), str(self.refusals), str(self.max_player_edges),
        ]

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "k": self.k,
            "policy": self.policy,
            "mm_g": self.mm_g,
            "mm_union": self.mm_union,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "ratio_decimal": decimal6(self.ratio),
            "refusals": self.refusals,
            "per_player_edges": self.per_player_edges,
            "player_mm": self.player_mm,
        }


def player_coreset(part: BipartiteGraph, policy: Policy) -> tuple[frozenset[Edge], bool]:
    """Edges one player sends, and whether an ``avoid`` request was refused."""
    if policy.name == "baseline":
        return maximum_matching(part), False
    if policy.name == "avoid":
        h = skeleton_avoiding(part, policy.forbidden)
        if not isinstance(h, Refusal):
            return h.support, False
        return matching_skeleton(part).support, True
    return matching_skeleton(part).support, False


def run_trial(
    g: BipartiteGraph, k: int, seed: int, policy: Policy = CANONICAL, mm_g: int | None = None
) -> TrialReport:
    if mm_g is None:
        mm_g = len(maximum_matching(g))
    parts = random_k_partition(g, k, seed).parts
    sent: list[frozenset[Edge]] = []
    refusals = 0
    player_mm = []
    for part in parts:
        edges, refused = player_coreset(part, policy)
        sent.append(edges)
        refusals += refused
        player_mm.append(len(maximum_matching(part)))
    union = union_graphs([g.with_edges(e) for e in sent])
    return TrialReport(
        mm_g=mm_g,
        mm_union=len(maximum_matching(union)),
        per_player_edges=[len(e) for e in sent],
        player_mm=player_mm,
        k=k,
        seed=seed,
        policy=str(policy),
        refusals=refusals,
    )


# --- experiments ----------------------------------------------------------------


@dataclass(frozen=True)
class GraphSource:
    """Recipe for an experiment's input graph: a generator family or an edge-list file."""

    family: str
    p: int = 0
    q: int = 0
    prob: float = 0.0
    r: int = 0
    k: int = 0
    seed: int = 0
    path: str | None = None

    def build(self) -> BipartiteGraph:
        if self.family == "perfect":
            return gen_perfect(self.p)
        if self.family == "random":
            return gen_random_bipartite(self.p, self.q, self.prob, self.seed)
        if self.family == "pathological":
            return gen_pathological(self.r, self.k)
        if self.family == "file":
            return read_edge_list(self.path)
        raise ValueError(f"unknown graph family {self.family!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    graph: BipartiteGraph | GraphSource
    k: int
    repetitions: int
    seed: int = 0
    policy: Policy = CANONICAL
    workers: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")


@dataclass
class ExperimentReport:
    trials: list[TrialReport]
    wall_time: float = 0.0
    bound: int | None = None
    """Upper bound on ``mm_union`` checked per trial (pathological runs)."""
    meta: dict = field(default_factory=dict)

    @property
    def ratios(self) -> list[Fraction]:
        return [t.ratio for t in self.trials]

    @property
    def mean_ratio(self) -> Fraction:
        return sum(self.ratios, Fraction(0)) / len(self.trials)

    @property
    def min_ratio(self) -> Fraction:
        return min(self.ratios)

    @property
    def max_ratio(self) -> Fraction:
        return max(self.ratios)

    def within_bound(self, trial: TrialReport) -> bool | None:
        return None if self.bound is None else trial.mm_union <= self.bound

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for t in self.trials:
            writer.writerow(t.csv_row())
        return buf.getvalue()

    def to_dict(self) -> dict:
        trials = []
        for t in self.trials:
            row = t.to_dict()
            if self.bound is not None:
                row["within_bound"] = self.within_bound(t)
                row["avoid_success"] = decimal6(Fraction(t.k - t.refusals, t.k))
            trials.append(row)
        return {
            "meta": self.meta,
            "bound": self.bound,
            "mean_ratio": decimal6(self.mean_ratio),
            "min_ratio": decimal6(self.min_ratio),
            "max_ratio": decimal6(self.max_ratio),
            "wall_time": round(self.wall_time, 3),
            "trials": trials,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def trial_seeds(master: int, repetitions: int) -> list[int]:
    """Independent 64-bit seeds, one per trial index, spawned from ``master``."""
    children = np.random.SeedSequence(master).spawn(repetitions)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def _trial_job(args) -> TrialReport:
    g, k, seed, policy, mm_g, index = args
    report = run_trial(g, k, seed, policy, mm_g)
    report.trial = index
    return report


def _run(g: BipartiteGraph, k: int, repetitions: int, seed: int, policy: Policy, workers: int) -> list[TrialReport]:
    mm_g = len(maximum_matching(g))
    jobs = [(g, k, s, policy, mm_g, i) for i, s in enumerate(trial_seeds(seed, repetitions))]
    if workers <= 1:
        return [_trial_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so reports stay indexed by trial
        return list(pool.map(_trial_job, jobs))


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    g = config.graph.build() if isinstance(config.graph, GraphSource) else config.graph
    start = time.perf_counter()
    trials = _run(g, config.k, config.repetitions, config.seed, config.policy, config.workers)
    return ExperimentReport(
        trials,
        wall_time=time.perf_counter() - start,
        meta={
            "p_count": g.p_count,
            "q_count": g.q_count,
            "m": g.m,
            "k": config.k,
            "repetitions": config.repetitions,
            "seed": config.seed,
            "policy": str(config.policy),
        },
    )


def pathological_policy(r: int, k: int) -> Policy:
    """Avoid the P2-Q2 matching edges of :func:`gen_pathological`."""
    lay = pathological_layout(r, k)
    return avoid(zip(lay.p2, lay.q2), label="P2xQ2")


def pathological_experiment(
    r: int, k: int, repetitions: int, seed: int = 0, workers: int = 1
) -> ExperimentReport:
    """Adversarial skeletons on the six-group graph; ``mm_union`` is checked against ``2r + 4r/k``."""
    config = ExperimentConfig(gen_pathological(r, k), k, repetitions, seed, pathological_policy(r, k), workers)
    report = run_experiment(config)
    report.bound = 2 * r + 4 * r // k
    report.meta.update(r=r, bound=report.bound)
    return report
