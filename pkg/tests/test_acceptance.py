"""Acceptance gate: one test per criterion, each reporting a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdicts are repeated
in an "acceptance criteria" section at the end of the report.  The two
experiment reproductions (AC6, AC7) take a few minutes on one core.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
from _corpus import large_random_graphs, small_random_graphs, sparse_graphs
from conftest import ACCEPTANCE

from matchskel.coreset import (
    CANONICAL,
    ExperimentConfig,
    pathological_experiment,
    run_experiment,
)
from matchskel.decomposition import (
    block_decomposition,
    brute_force_min_expansion,
    canonical_vertex_cover,
    check_robustness,
    check_structure,
    min_expansion,
)
from matchskel.graphcore import gen_random_bipartite
from matchskel.matching import (
    brute_force_matching,
    is_matching,
    is_vertex_cover,
    maximum_matching,
    minimum_vertex_cover,
)
from matchskel.skeleton import matching_skeleton, verify_skeleton

SMALL_COUNT = 1000
LARGE_COUNT = 100


def report(key: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {key} {detail}"
    ACCEPTANCE[key] = line
    print(line)


@pytest.fixture(scope="module")
def small_corpus():
    return small_random_graphs(SMALL_COUNT, 20240601)


@pytest.fixture(scope="module")
def corpus(small_corpus):
    """Small and n = 2000 graphs with their decompositions and maximum matchings."""
    graphs = small_corpus + large_random_graphs(LARGE_COUNT, 20240602)
    return [(g, block_decomposition(g), maximum_matching(g)) for g in graphs]


def test_ac1_oracle_equivalence(small_corpus):
    start = time.perf_counter()
    bad = []
    for i, g in enumerate(small_corpus):
        every_p = range(g.p_count)
        if min_expansion(g, every_p) != brute_force_min_expansion(g, every_p):
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report("AC1", ok, f"min_expansion == brute force on {len(small_corpus)} graphs, "
                      f"{len(bad)} mismatches, {elapsed:.1f}s (limit 60s)")
    assert ok, bad[:10]


def test_ac2_decomposition_structure(corpus):
    bad = []
    for i, (g, d, _) in enumerate(corpus):
        verdict = check_structure(g, d)
        if not verdict:
            bad.append((i, verdict.violations[:2]))
    ok = not bad
    report("AC2", ok, f"levels strictly increasing, alpha = |Q|/|P|, Gamma(P_i) within Q_1..Q_i "
                      f"on {len(corpus)} graphs, {len(bad)} failures")
    assert ok, bad[:5]


def test_ac3_canonical_cover(corpus):
    bad = []
    for i, (g, d, m) in enumerate(corpus):
        cover = canonical_vertex_cover(g, d)
        if not is_vertex_cover(g, cover) or len(cover) != len(m):
            bad.append(i)
    ok = not bad
    report("AC3", ok, f"canonical cover is a cover of size mm on {len(corpus)} graphs, {len(bad)} failures")
    assert ok, bad[:10]


def test_ac4_skeleton_invariants(corpus):
    bad = []
    for i, (g, d, _) in enumerate(corpus):
        verdict = verify_skeleton(g, matching_skeleton(g, d))
        if not verdict:
            bad.append((i, verdict.violations[:2]))
    ok = not bad
    report("AC4", ok, f"skeleton forest, <= n-1 edges, exact saturation, mm preserved "
                      f"on {len(corpus)} graphs, {len(bad)} failures")
    assert ok, bad[:5]


def robustness_triples(count: int, seed: int):
    """(G, E+, E-) with every E+ pair going down or level in alpha and E- outside the skeleton."""
    rng = random.Random(seed)
    graphs = small_random_graphs(count, seed, max_p=20, max_q=20)
    for g in graphs:
        d = block_decomposition(g)
        h = matching_skeleton(g, d)
        candidates = [
            (p, q)
            for p in range(g.p_count)
            for q in range(g.q_count)
            if (p, q) not in g.edges and d.alpha_p(p) >= d.alpha_q(q)
        ]
        plus = set(rng.sample(candidates, min(len(candidates), rng.randint(0, 8))))
        spare = sorted(g.edges - h.support)
        minus = set(rng.sample(spare, min(len(spare), rng.randint(0, 8))))
        yield g, d, h, plus, minus


def test_ac5_robustness_fuzz():
    count = 500
    bad, touched = [], 0
    for i, (g, d, h, plus, minus) in enumerate(robustness_triples(count, 777)):
        touched += bool(plus or minus)
        if not check_robustness(g, d, plus, minus, h):
            bad.append(i)
    ok = not bad
    report("AC5", ok, f"re-decomposition unchanged on {count} triples "
                      f"({touched} with a non-empty change), {len(bad)} failures")
    assert ok, bad[:10]


@pytest.mark.slow
def test_ac6_random_graph_ratio():
    g = gen_random_bipartite(1000, 1000, 0.01, 6)
    rep = run_experiment(ExperimentConfig(g, k=20, repetitions=50, seed=6, policy=CANONICAL))
    mean, low = rep.mean_ratio, rep.min_ratio
    ok = mean >= Fraction(1, 2) and low >= Fraction(45, 100)
    report("AC6", ok, f"random 1000+1000 p=0.01 k=20, 50 trials: mean ratio {float(mean):.6f} (>= 0.50), "
                      f"min {float(low):.6f} (>= 0.45), {rep.wall_time:.0f}s")
    assert ok


@pytest.mark.slow
def test_ac7_pathological_bound():
    r, k = 500, 20
    rep = pathological_experiment(r, k, 20, seed=7)
    clean = [t for t in rep.trials if t.refusals == 0]
    over = [t.trial for t in clean if t.mm_union > rep.bound]
    worst = max((t.ratio for t in clean), default=Fraction(0))
    ok = rep.bound == 1100 and not over and len(clean) >= 18
    report("AC7", ok, f"pathological r=500 k=20: {len(clean)}/20 trials without refusals (>= 18), "
                      f"{len(over)} above mm_union <= 1100, max ratio {float(worst):.4f} "
                      f"(mm_g = {rep.trials[0].mm_g}), {rep.wall_time:.0f}s")
    assert ok, over


def test_ac8_matching_oracle(corpus):
    sparse = sparse_graphs(1000, 99)
    bad_bf = []
    for i, g in enumerate(sparse):
        m = maximum_matching(g)
        if not is_matching(g, m) or len(m) != len(brute_force_matching(g)):
            bad_bf.append(i)
    bad_konig = []
    everything = [(g, m) for g, _, m in corpus] + [(g, maximum_matching(g)) for g in sparse]
    for i, (g, m) in enumerate(everything):
        cover = minimum_vertex_cover(g, m)
        if not is_vertex_cover(g, cover) or len(cover) != len(m):
            bad_konig.append(i)
    ok = not bad_bf and not bad_konig
    report("AC8", ok, f"Hopcroft-Karp == brute force on {len(sparse)} graphs with m <= 25 "
                      f"({len(bad_bf)} mismatches); Konig equality on {len(everything)} graphs "
                      f"({len(bad_konig)} failures)")
    assert ok


def test_ac9_determinism():
    runs = []
    g = gen_random_bipartite(1000, 1000, 0.01, 6)
    for workers in (1, 1, 2):
        runs.append(run_experiment(ExperimentConfig(g, 20, 4, seed=9, workers=workers)).to_csv())
    for workers in (1, 2):
        runs.append(pathological_experiment(40, 4, 6, seed=9, workers=workers).to_csv())
    ok = runs[0] == runs[1] == runs[2] and runs[3] == runs[4] and runs[0] != runs[3]
    report("AC9", ok, "byte-identical CSV across repeats and worker counts 1 and 2 "
                      "(random k=20 and pathological avoid runs)")
    assert ok
