import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchskel.graphcore import (
    build_graph,
    format_edge_list,
    gen_pathological,
    gen_random_bipartite,
    neighbors,
    parse_edge_list,
    pathological_layout,
    random_k_partition,
    read_edge_list,
    union_graphs,
    write_edge_list,
)
from matchskel.matching import maximum_matching


@st.composite
def graphs(draw, max_side=8):
    pc = draw(st.integers(0, max_side))
    qc = draw(st.integers(0, max_side))
    if pc == 0 or qc == 0:
        return build_graph(pc, qc, [])
    edges = draw(st.lists(st.tuples(st.integers(0, pc - 1), st.integers(0, qc - 1)), max_size=30))
    return build_graph(pc, qc, edges)


def test_build_graph_basic():
    g = build_graph(2, 2, [(0, 0), (1, 1)])
    assert g.m == 2 and g.n == 4


def test_build_graph_dedups():
    g = build_graph(1, 2, [(0, 0), (0, 1), (0, 0)])
    assert g.m == 2
    assert g.edges == {(0, 0), (0, 1)}


def test_build_graph_rejects_out_of_range():
    with pytest.raises(ValueError, match=r"\(0, 5\)"):
        build_graph(2, 1, [(0, 5)])


def test_neighbors_examples():
    star = build_graph(1, 2, [(0, 0), (0, 1)])
    assert neighbors(star, {0}) == {0, 1}
    assert neighbors(star, set()) == set()
    assert neighbors(build_graph(2, 1, [(0, 0), (1, 0)]), {0, 1}) == {0}


def test_neighbors_bounds():
    with pytest.raises(ValueError):
        neighbors(build_graph(1, 1, [(0, 0)]), {3})


@given(graphs(), st.data())
def test_neighbors_monotone(g, data):
    if g.p_count == 0:
        return
    t = data.draw(st.sets(st.integers(0, g.p_count - 1)))
    s = data.draw(st.sets(st.sampled_from(sorted(t)))) if t else set()
    assert neighbors(g, s) <= neighbors(g, t)


def test_partition_k1_is_identity():
    g = gen_random_bipartite(20, 20, 0.3, 5)
    res = random_k_partition(g, 1, 99)
    assert len(res.parts) == 1 and res.parts[0] == g


def test_partition_sizes_sum():
    g = build_graph(10, 10, [(p, q) for p in range(10) for q in range(10)])
    assert g.m == 100
    parts = random_k_partition(g, 10, 17).parts
    assert sum(p.m for p in parts) == 100


def test_partition_concentration():
    # binomial(10000, 1/10): every part within +-20% of 1000 (recorded run)
    g = build_graph(100, 100, [(i // 100, i % 100) for i in range(10000)])
    sizes = [p.m for p in random_k_partition(g, 10, 2024).parts]
    assert all(800 <= s <= 1200 for s in sizes), sizes


def test_partition_rejects_k0():
    with pytest.raises(ValueError):
        random_k_partition(build_graph(1, 1, [(0, 0)]), 0, 1)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(1, 6), st.integers(0, 2**64 - 1))
def test_partition_union_is_identity(g, k, seed):
    res = random_k_partition(g, k, seed)
    assert len(res.parts) == k
    total = sum(p.m for p in res.parts)
    assert total == g.m  # pairwise disjoint
    assert union_graphs(res.parts) == g


@settings(max_examples=30, deadline=None)
@given(graphs(), st.integers(1, 6), st.integers(0, 2**64 - 1))
def test_partition_reproducible(g, k, seed):
    a = random_k_partition(g, k, seed)
    b = random_k_partition(build_graph(g.p_count, g.q_count, reversed(g.sorted_edges)), k, seed)
    assert [format_edge_list(p) for p in a.parts] == [format_edge_list(p) for p in b.parts]


def test_union_examples():
    g = gen_random_bipartite(5, 5, 0.5, 3)
    assert union_graphs([g, g]) == g
    a = build_graph(2, 2, [(0, 0)])
    b = build_graph(2, 2, [(1, 1)])
    assert union_graphs([a, b]).m == 2
    with pytest.raises(ValueError):
        union_graphs([a, build_graph(3, 2, [])])


def test_gen_pathological_sizes():
    g = gen_pathological(500, 20)
    assert g.n == 3100  # 6r + 4r/k
    lay = pathological_layout(500, 20)
    assert len(lay.q1) == len(lay.p3) == 550
    assert all(len(x) == 500 for x in (lay.p1, lay.p2, lay.q2, lay.q3))


def test_gen_pathological_edge_count():
    g = gen_pathological(10, 10)
    assert len(pathological_layout(10, 10).q1) == 12
    assert g.m == 10 + 12 * 10 + 10 + 10 * 12 + 10 == 270


def test_gen_pathological_edge_groups():
    r, k = 6, 3
    g = gen_pathological(r, k)
    lay = pathological_layout(r, k)
    expected = set(zip(lay.p1, lay.q1[:r]))
    expected |= {(p, q) for p in lay.p2 for q in lay.q1}
    expected |= set(zip(lay.p2, lay.q2))
    expected |= {(p, q) for p in lay.p3 for q in lay.q2}
    expected |= set(zip(lay.p3[:r], lay.q3))
    assert g.edges == expected


def test_gen_pathological_divisibility():
    with pytest.raises(ValueError):
        gen_pathological(10, 3)


@pytest.mark.parametrize("r,k", [(1, 1), (1, 2), (3, 2), (5, 5), (10, 10), (12, 8), (30, 4)])
def test_gen_pathological_matching_size(r, k):
    # 3r plus the 2r/k extra Q1-vertices that P2 can absorb (all of them once k >= 2)
    assert len(maximum_matching(gen_pathological(r, k))) == 3 * r + min(2 * r // k, r)


def test_gen_random_extremes():
    assert gen_random_bipartite(5, 4, 0.0, 1).m == 0
    assert gen_random_bipartite(5, 4, 1.0, 1).m == 20
    with pytest.raises(ValueError):
        gen_random_bipartite(5, 4, 1.5, 1)


def test_gen_random_density():
    # recorded run of binomial(10000, 0.1)
    m = gen_random_bipartite(100, 100, 0.1, 2024).m
    assert 800 <= m <= 1200
    assert gen_random_bipartite(100, 100, 0.1, 2024) == gen_random_bipartite(100, 100, 0.1, 2024)


def test_edge_list_roundtrip(tmp_path):
    g = gen_random_bipartite(7, 9, 0.4, 11)
    path = tmp_path / "g.txt"
    write_edge_list(g, path, comment="seeded\nrandom")
    text = path.read_text()
    assert text.startswith("# seeded\n# random\np 7 9 ")
    assert read_edge_list(path) == g


def test_edge_list_duplicates():
    text = "p 2 2 3\ne 0 0\ne 0 0\ne 1 1\n"
    with pytest.raises(ValueError, match="duplicate"):
        parse_edge_list(text, strict=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = parse_edge_list(text)
    assert g.m == 2 and caught


@pytest.mark.parametrize(
    "text",
    [
        "e 0 0\n",
        "p 1 1 2\ne 0 0\n",
        "p 1 1 1\ne 0 3\n",
        "p 1 1 1\nx 0 0\n",
        "",
    ],
)
def test_edge_list_malformed(text):
    with pytest.raises(ValueError):
        parse_edge_list(text)
