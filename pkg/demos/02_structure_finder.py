"""
Finding an almost-transitive piece
==================================

Start from all copies of T_k in a tournament, stored as a k-uniform
hypergraph. Each step commits to one vertex w, keeps only the copies that
extend through w and peels the hypergraph back to a min-degree core. The
surviving vertices, sorted by how many committed vertices beat them, come
out in an order with few backward edges.
"""

from acyclic_tournaments import Tournament, find_almost_transitive, find_almost_transitive_iterated
from acyclic_tournaments.structure import StructureParams, step_log_csv
from acyclic_tournaments.tournament import backward_degrees

g = Tournament.random(50, seed=2)

# Default schedule. At n = 50 the alignment threshold epsilon exceeds 1, so
# only refinement steps happen and the log records the skip.
res = find_almost_transitive(g, 6)
print(step_log_csv(res.step_log))
print(f"kept {len(res.vertices)} vertices, q = {res.q}, schedule bound {res.q_bound:.1f}")

# %%
# Forcing a small epsilon shows alignment steps: each one commits to the
# vertex incompatible with the most others and must shrink the pool.

forced = StructureParams(k=6, epsilon=0.1, refinement_steps=1, step_cap=6, outer_iterations=1)
res = find_almost_transitive(g, 6, forced)
print(step_log_csv(res.step_log))
print("backward degrees along the returned order:", backward_degrees(g, res.ordering).tolist())

# %%
# The iterated version repeats the finder inside its own output, trading
# size for a smaller q.

it = find_almost_transitive_iterated(g, 6)
for r in it.rounds:
    print(f"{r.n_before} -> {r.n_after} vertices, k {r.k_before} -> {r.k_after}, q = {r.q}")
print("final q:", it.q, "on", len(it.ordering), "vertices")
