"""
Exact small cases and the bucketed subsequence scanner
======================================================

g(k) is the least n such that every n-vertex tournament has an ordering
whose forward graph needs k colours. For tiny k we can settle it by running
through every isomorphism class. Afterwards we trace the strip scanner that
looks for increasing subsequences taking at most one entry per bucket.
"""

from acyclic_tournaments import (
    BucketedInterval,
    StripMatrix,
    ac_number,
    build_grid_tournament,
    failure_rate_experiment,
    g_of_k_exhaustive,
    scan_phase,
)
from acyclic_tournaments.enumeration import isomorphism_classes

for n in range(1, 7):
    print(f"n={n}: {len(isomorphism_classes(n))} tournaments up to isomorphism")

for k in (1, 2, 3, 4):
    res = g_of_k_exhaustive(k)
    print(f"g({k}) = {res.value}", [(r.n, r.verdict) for r in res.ladder])

print("\nmax chi over orderings of the 9-vertex grid tournament:", ac_number(build_grid_tournament(3)))

# %%
# A worked scan. Columns come in slices of width 3; each phase walks one
# diagonal strip and takes the first usable 1 in each slice.

sigma = [8, 9, 10, 7, 1, 5, 2, 14, 4, 3, 19, 13, 15, 20, 11, 6, 12, 16, 17, 18, 21, 22, 23, 24]
buckets = [{1, 2, 3}, {4, 8, 16}, {5, 9, 13}, {6, 7, 10},
           {11, 15, 17}, {12, 18, 19}, {14, 20, 21}, {22, 23, 24}]
label = {x: b for b, xs in enumerate(buckets) for x in xs}
matrix = StripMatrix(sigma, BucketedInterval(3, tuple(label[x] for x in range(1, 25))))
print()
print(matrix.dense().astype(int))
for q in range(matrix.rows):
    phase = scan_phase(matrix, q, 3)
    print(f"phase {q}: columns {phase.columns}, success {phase.success}")
    if phase.success:
        break

# %%
# How often every phase fails on random permutations

for k, m in [(8, 64), (16, 128), (16, 256)]:
    r = failure_rate_experiment(k, m, 2000, seed=0)
    print(f"k={k} m={m} ell={r.ell}: {r.failures}/{r.trials} failures, bound {r.bound:.2e}")
