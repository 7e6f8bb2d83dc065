"""
Tournaments from projective planes
==================================

Blow up each point of the plane of order p into a bucket of k vertices and
orient edges along the lines. The bipartite incidence lift between vertices
and lines has a two-valued spectrum, and that gap is what keeps every
ordering from producing a large independent set.
"""

import numpy as np

from acyclic_tournaments import (
    IncidenceLift,
    PlaneTournamentSpec,
    build_plane_tournament,
    build_projective_plane,
    check_expander_mixing,
    incidence_singular_values,
    independent_set_lower_audit,
    line_coverage_deficit,
    random_ordering,
)
from acyclic_tournaments.plane import closed_form_singular_values, format_pp1

plane = build_projective_plane(2)
print(format_pp1(plane))

# %%
# Spectrum of the lift for p = 2, k = 9: one value 9 and six values sqrt(18)

lift = IncidenceLift(plane, 9)
print("numeric:    ", np.round(incidence_singular_values(lift), 6))
print("closed form:", np.round(closed_form_singular_values(3, 9), 6))

# %%
# Discrepancy between edge counts and their expectation, on random sets

lift = IncidenceLift(plane, 4)
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    X = np.flatnonzero(rng.random(lift.matrix.shape[0]) < 0.5)
    Y = np.flatnonzero(rng.random(lift.matrix.shape[1]) < 0.5)
    chk = check_expander_mixing(lift, X, Y)
    if chk.bound:
        worst = max(worst, chk.discrepancy / chk.bound)
print(f"largest discrepancy / bound over 2000 pairs: {worst:.3f}")

# %%
# The tournament itself, and how a random vertex set meets the lines

pt = build_plane_tournament(PlaneTournamentSpec(build_projective_plane(5), 3, "random", seed=1))
n = pt.tournament.n
X = rng.choice(n, n // 3, replace=False)
print(f"\n{n} vertices; lines poorly covered by a random third:", line_coverage_deficit(pt, X))

pi = random_ordering(n, 4)
audit = independent_set_lower_audit(pt, list(pi.perm), range(n))
print(f"independent set along line {audit.line}: size {audit.alpha_found}, target {audit.threshold:.2f}")
