import pytest

from acyclic_tournaments import (
    PlaneTournamentSpec,
    SimpleGraph,
    Tournament,
    ac_number,
    best_ordering_exhaustive,
    build_grid_tournament,
    build_plane_tournament,
    build_projective_plane,
    chromatic_bounds,
    count_transitive_subtournaments,
    forward_subgraph,
    g_of_k_exhaustive,
    greedy_colour_by_mis,
    random_ordering,
)
from acyclic_tournaments.enumeration import isomorphism_classes
from acyclic_tournaments.errors import DomainError, SizeLimitError
from acyclic_tournaments.experiments import disjoint_cyclic_triangles, gk_rows
from acyclic_tournaments.graph import is_proper_colouring

from oracles import brute_best_chi

G_OF_3 = 4  # frozen after the first full enumeration
GRID_Q3_AC = 5  # frozen after the first exhaustive run over 9! orderings


def test_g_small_values():
    assert g_of_k_exhaustive(1).value == 1
    assert g_of_k_exhaustive(2).value == 2
    res = g_of_k_exhaustive(3)
    assert res.value == G_OF_3 and res.exact


def test_g3_ladder_and_counterexample():
    res = g_of_k_exhaustive(3)
    assert [r.n for r in res.ladder] == [3, 4]
    bad = res.ladder[0].counterexample
    assert res.ladder[0].verdict == "counterexample"
    assert bad.n == 3 and bad.out_degrees().tolist() == [1, 1, 1]
    assert brute_best_chi(bad.adjacency) < 3
    assert res.ladder[1].verdict == "all-tournaments-succeed"


def test_g3_agrees_with_labelled_enumeration():
    from acyclic_tournaments.enumeration import all_tournaments
    assert any(best_ordering_exhaustive(g)[1] < 3 for g in all_tournaments(3))
    assert all(best_ordering_exhaustive(g)[1] >= 3 for g in all_tournaments(4))


def test_g_ladder_is_monotone():
    res = g_of_k_exhaustive(4)
    verdicts = [r.verdict for r in res.ladder]
    assert verdicts[-1] == "all-tournaments-succeed"
    assert all(v == "counterexample" for v in verdicts[:-1])
    for rec in res.ladder[:-1]:
        assert best_ordering_exhaustive(rec.counterexample)[1] < 4
    rows = gk_rows(res)
    assert rows[0][:3] == (4, 4, "counterexample") and rows[-1][-1] == "exact"


def test_g_large_k_needs_sampling():
    with pytest.raises(SizeLimitError):
        g_of_k_exhaustive(6)
    with pytest.raises(DomainError):
        g_of_k_exhaustive(0)


def test_g_sampling_is_labelled():
    res = g_of_k_exhaustive(5, sampling=True, samples=5, seed=0, max_n=9)
    assert not res.exact and res.label == "lower-bound-only"
    assert [r.exhaustive for r in res.ladder[:2]] == [True, True]
    assert res.ladder[-1].verdict == "no-counterexample-sampled"
    for rec in res.ladder[:-1]:
        assert best_ordering_exhaustive(rec.counterexample)[1] < 5


def test_ac_number_examples():
    for n in (1, 4, 8):
        assert ac_number(Tournament.transitive(n)) == (True, n, n)
    assert ac_number(Tournament.cycle3()).value == 2
    assert ac_number(build_grid_tournament(3)).value == GRID_Q3_AC


def test_ac_number_brackets_large_inputs():
    g = Tournament.random(14, 3)
    res = ac_number(g)
    assert not res.exact or res.lower == res.upper
    assert res.lower <= res.upper <= g.n
    assert res.value is None or res.value == res.lower


def test_triangle_packing_is_disjoint_and_cyclic():
    g = Tournament.random(15, 1)
    tris = disjoint_cyclic_triangles(g)
    used = [v for t in tris for v in t]
    assert len(used) == len(set(used))
    for x, y, z in tris:
        assert (g.beats(x, y) and g.beats(y, z) and g.beats(z, x)) or \
               (g.beats(y, x) and g.beats(z, y) and g.beats(x, z))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_ac_number_at_least_n_over_threshold(n):
    """max chi(G_pi) >= n / (least k with fewer than k! copies of T_k)."""
    from math import factorial
    for cls in isomorphism_classes(n):
        g = cls.tournament
        k = next(k for k in range(1, n + 2)
                 if k > n or count_transitive_subtournaments(g, k) < factorial(k))
        assert ac_number(g).value * k >= n


def test_mis_colouring_examples():
    empty = greedy_colour_by_mis(SimpleGraph.empty(6), 0)
    assert empty.colour_count == 1 and empty.class_sizes == (6,)
    full = greedy_colour_by_mis(SimpleGraph.complete(5), 0)
    assert full.colour_count == 5


def test_mis_colouring_leaves_small_remainders_as_singletons():
    g = SimpleGraph.cycle(9)
    res = greedy_colour_by_mis(g, 5)
    assert is_proper_colouring(g, res.colours)
    assert res.class_sizes[: res.greedy_classes][0] == 4
    assert all(s == 1 for s in res.class_sizes[res.greedy_classes:])


def test_mis_colouring_sandwich_on_plane_tournament():
    pt = build_plane_tournament(PlaneTournamentSpec(build_projective_plane(2), 4, seed=0))
    n = pt.tournament.n
    graph = forward_subgraph(pt.tournament, random_ordering(n, 5))
    res = greedy_colour_by_mis(graph, 10)
    assert is_proper_colouring(graph, res.colours)
    lower, _ = chromatic_bounds(graph)
    assert lower <= res.colour_count <= n
