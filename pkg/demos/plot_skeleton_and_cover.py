"""
Matching skeleton and canonical vertex cover
============================================

Inside each block, an exact fractional matching saturates every P-vertex
at the block's level.  Cancelling cycles leaves a forest: the skeleton.
"""

from matchskel import (
    block_decomposition,
    canonical_vertex_cover,
    gen_random_bipartite,
    matching_skeleton,
    maximum_matching,
    verify_skeleton,
)

g = gen_random_bipartite(60, 80, 0.03, seed=11)
d = block_decomposition(g)
print(f"{g.m} edges, {len(d.blocks)} blocks, levels {[str(b.alpha) for b in d.blocks]}")

h = matching_skeleton(g, d)
print(f"skeleton keeps {len(h)} of {g.m} edges (n - 1 = {g.n - 1})")

# forest support, exact loads, matching size preserved
print("skeleton checks:", verify_skeleton(g, h).violations or "all pass")

# Q below level 1, P at level 1 and above: a minimum vertex cover
cover = canonical_vertex_cover(g, d)
print("cover size", len(cover), "maximum matching", len(maximum_matching(g)))
