"""
An adversarial skeleton choice
==============================

Six vertex groups.  Every player's piece admits a skeleton that skips the
P2-Q2 matching edges, and the coordinator then cannot recover them.  With
r = 40 and k = 4 the union's matching is held to at most 2r + 4r/k.
"""

from matchskel import gen_pathological, maximum_matching, pathological_experiment

r, k = 40, 4
g = gen_pathological(r, k)
print(f"n = {g.n}, m = {g.m}, maximum matching {len(maximum_matching(g))}")

rep = pathological_experiment(r, k, repetitions=5, seed=2)
for t in rep.trials:
    print(f"trial {t.trial}: mm_union={t.mm_union} (bound {rep.bound}), refusals={t.refusals}")
print(f"mean ratio {float(rep.mean_ratio):.4f}")
