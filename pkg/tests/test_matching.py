from fractions import Fraction

import pytest
from _corpus import named_graphs, small_random_graphs, sparse_graphs

from matchskel.graphcore import P_SIDE, Q_SIDE, VertexRef, build_graph, gen_pathological
from matchskel.matching import (
    brute_force_matching,
    is_matching,
    is_vertex_cover,
    maximum_matching,
    minimum_vertex_cover,
    verify_alpha_matching,
    verify_fractional_matching,
)

NAMED = named_graphs()


@pytest.mark.parametrize(
    "g,size",
    [
        (NAMED["perfect3"], 3),
        (NAMED["star12"], 1),
        (NAMED["c4"], 2),
        (NAMED["empty"], 0),
        (gen_pathological(10, 10), 32),
    ],
)
def test_maximum_matching_sizes(g, size):
    m = maximum_matching(g)
    assert len(m) == size
    assert is_matching(g, m)


def test_maximum_matching_deterministic():
    g = small_random_graphs(1, 3)[0]
    assert maximum_matching(g) == maximum_matching(build_graph(g.p_count, g.q_count, g.sorted_edges[::-1]))


def test_brute_force_examples():
    assert brute_force_matching(NAMED["empty"]) == frozenset()
    assert len(brute_force_matching(NAMED["c4"])) == 2


def test_brute_force_guard():
    g = build_graph(6, 6, [(p, q) for p in range(6) for q in range(6)])
    with pytest.raises(ValueError):
        brute_force_matching(g)


def test_matching_vs_brute_force():
    for g in sparse_graphs(300, 7):
        hk = maximum_matching(g)
        bf = brute_force_matching(g)
        assert is_matching(g, hk) and is_matching(g, bf)
        assert len(hk) == len(bf)
        assert len(hk) <= min(g.p_count, g.q_count)


def test_konig_examples():
    assert len(minimum_vertex_cover(NAMED["perfect3"], maximum_matching(NAMED["perfect3"]))) == 3
    assert minimum_vertex_cover(NAMED["empty"], frozenset()) == frozenset()
    star = NAMED["star12"]
    assert minimum_vertex_cover(star, {(0, 0)}) == {VertexRef(P_SIDE, 0)}


@pytest.mark.parametrize("name", sorted(NAMED))
def test_konig_equality_named(name):
    g = NAMED[name]
    m = maximum_matching(g)
    cover = minimum_vertex_cover(g, m)
    assert is_vertex_cover(g, cover)
    assert len(cover) == len(m)


def test_konig_equality_random():
    for g in small_random_graphs(200, 8):
        m = maximum_matching(g)
        cover = minimum_vertex_cover(g, m)
        assert is_vertex_cover(g, cover), g
        assert len(cover) == len(m)


def test_is_vertex_cover_detects_gap():
    v = is_vertex_cover(NAMED["c4"], {VertexRef(P_SIDE, 0)})
    assert not v and any("uncovered" in msg for msg in v.violations)
    assert not is_vertex_cover(NAMED["c4"], {VertexRef(Q_SIDE, 9), VertexRef(Q_SIDE, 0), VertexRef(Q_SIDE, 1)})


def test_is_matching_detects_conflicts():
    g = NAMED["c4"]
    assert not is_matching(g, [(0, 0), (0, 1)])
    assert not is_matching(g, [(0, 0), (1, 0)])
    assert not is_matching(NAMED["perfect3"], [(0, 1)])


def test_fractional_examples():
    single = NAMED["single"]
    assert verify_fractional_matching(single, {})
    assert verify_fractional_matching(single, {(0, 0): Fraction(1)})
    assert not verify_fractional_matching(single, {(0, 0): Fraction(3, 2)})
    c4 = NAMED["c4"]
    assert verify_fractional_matching(c4, {e: Fraction(1, 2) for e in c4.edges})


def test_fractional_violations_reported():
    c4 = NAMED["c4"]
    v = verify_fractional_matching(c4, {(0, 0): Fraction(2, 3), (0, 1): Fraction(2, 3), (5, 5): Fraction(0)})
    assert not v
    text = " ".join(v.violations)
    assert "P0 load 4/3" in text and "(5, 5)" in text
    assert not verify_fractional_matching(c4, {(0, 0): 0.5})


def test_alpha_matching_examples():
    star = NAMED["star12"]
    assert verify_alpha_matching(star, {(0, 0): Fraction(1), (0, 1): Fraction(1)}, Fraction(2), {0})
    pm = NAMED["perfect3"]
    ones = {e: Fraction(1) for e in pm.edges}
    assert verify_alpha_matching(pm, ones, Fraction(1), range(3))
    v = verify_alpha_matching(pm, ones, Fraction(1, 2), range(3))
    assert not v and len(v.violations) == 3


def test_alpha_matching_q_overload():
    g = NAMED["star21"]
    v = verify_alpha_matching(g, {(0, 0): Fraction(1), (1, 0): Fraction(1)}, Fraction(1), {0, 1})
    assert not v and "Q0 load 2" in v.violations[0]
