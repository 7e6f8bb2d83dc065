from math import exp

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from acyclic_tournaments import (
    ExtensionHypergraph,
    Tournament,
    almost_transitive_q,
    balanced_vertex,
    count_transitive_subtournaments,
    find_almost_transitive,
    find_almost_transitive_iterated,
    min_degree_peel,
)
from acyclic_tournaments.enumeration import all_tournaments
from acyclic_tournaments.errors import DomainError, ProcedureExhausted
from acyclic_tournaments.structure import (
    STEP_LOG_COLUMNS,
    StructureParams,
    StructureState,
    align_step,
    initial_state,
    refine_step,
    step_log_csv,
)
from acyclic_tournaments.tournament import backward_degrees

from oracles import brute_min_degree_core, is_transitive_set


def random_hypergraph(rng, n_h, arity, m):
    edges = {tuple(sorted(rng.choice(n_h, arity, replace=False).tolist())) for _ in range(m)}
    return ExtensionHypergraph(np.arange(n_h), arity, sorted(edges))


# --- peeling ---------------------------------------------------------------


def test_peel_single_edge():
    h = ExtensionHypergraph(np.arange(1, 6), 2, [(1, 2)])
    core = min_degree_peel(h)
    assert core.vertices.tolist() == [1, 2] and core.edge_set() == {(1, 2)}


def test_peel_leaves_complete_graph_alone():
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6)]
    core = min_degree_peel(ExtensionHypergraph(np.arange(6), 2, edges))
    assert core.vertex_count == 6 and core.edge_count == 15


def test_peel_random_three_uniform():
    h = random_hypergraph(np.random.default_rng(0), 8, 3, 12)
    core = min_degree_peel(h)
    assert core.edge_count > 0
    assert core.degrees().min() * h.vertex_count >= h.edge_count


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 10), st.integers(1, 4), st.integers(1, 30), st.integers(0, 10_000))
def test_peel_matches_one_at_a_time_oracle(n_h, arity, m, seed):
    arity = min(arity, n_h)
    h = random_hypergraph(np.random.default_rng(seed), n_h, arity, m)
    core = min_degree_peel(h)
    verts, edges = brute_min_degree_core(range(n_h), h.edge_set(), h.edge_count, h.vertex_count)
    assert core.vertices.tolist() == verts
    assert sorted(core.edge_set()) == edges


def test_peel_rejects_empty():
    with pytest.raises(DomainError):
        min_degree_peel(ExtensionHypergraph(np.arange(3), 2, np.zeros((0, 2))))


# --- balanced vertices --------------------------------------------------------


def test_balanced_vertex_small_cases():
    assert balanced_vertex(Tournament.cycle3()) in (0, 1, 2)
    assert balanced_vertex(Tournament.transitive(4)) in (1, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_balanced_vertex_exhaustive(n):
    for g in all_tournaments(n):
        v = balanced_vertex(g)
        assert 4 * min(g.out_degrees()[v], g.in_degrees()[v]) >= n - 2


def test_balanced_vertex_on_subsets():
    g = Tournament.random(12, 3)
    subset = [1, 4, 5, 7, 9, 11]
    v = balanced_vertex(g, subset)
    sub = g.induced(subset)
    i = subset.index(v)
    assert 4 * min(sub.out_degrees()[i], sub.in_degrees()[i]) >= len(subset) - 2


# --- single steps -----------------------------------------------------------


def _check_state_invariants(state: StructureState):
    g = state.tournament
    w = list(state.w)
    assert not set(w) & set(state.vertices.tolist())
    assert state.hypergraph.arity == state.k - state.step
    in_edge = set(state.hypergraph.edges.ravel().tolist())
    for v, level in state.level_of().items():
        assert level == sum(g.beats(x, v) for x in w)
        assert is_transitive_set(g.adjacency, w + [v])
        assert v in in_edge


def test_refine_on_transitive_four():
    g = Tournament.transitive(4)
    s1 = refine_step(initial_state(g, 4))
    assert s1.w[0] in (1, 2) and s1.hypergraph.arity == 3
    assert sorted(s1.vertices.tolist()) == sorted(set(range(4)) - {s1.w[0]})
    _check_state_invariants(s1)


def test_refine_rejects_empty_state():
    g = Tournament.transitive(3)
    s = initial_state(g, 3)
    empty = StructureState(g, 3, (), ExtensionHypergraph(np.zeros(0), 3, np.zeros((0, 3))),
                           np.zeros(0, dtype=np.int64))
    with pytest.raises(DomainError):
        refine_step(empty)
    assert s.step == 0


@pytest.mark.parametrize("seed", range(20))
def test_refine_keeps_every_vertex_covered(seed):
    g = Tournament.random(8, seed)
    try:
        s = initial_state(g, 4)
        for _ in range(2):
            s = refine_step(s)
            _check_state_invariants(s)
    except ProcedureExhausted:
        pass


def test_align_on_transitive_state_is_none():
    s = refine_step(initial_state(Tournament.transitive(6), 4))
    assert align_step(s, 0.01) is None


def test_align_shrinks_by_epsilon():
    eps = 0.1
    steps = 0
    for seed in range(100):
        g = Tournament.random(10, seed)
        try:
            s = refine_step(initial_state(g, 4))
            nxt = align_step(s, eps)
        except ProcedureExhausted:
            continue
        if nxt is None:
            continue
        steps += 1
        assert nxt.step_log[-1].v_prime <= (1 - eps) * s.hypergraph.vertex_count
        _check_state_invariants(nxt)
    assert steps > 0


# --- full procedure -------------------------------------------------------------


@pytest.mark.parametrize("n,k", [(6, 3), (10, 4), (12, 12)])
def test_transitive_input_stays_transitive(n, k):
    res = find_almost_transitive(Tournament.transitive(n), k)
    assert res.q == 0
    assert all(r.kind != "alignment" for r in res.step_log)


def test_cycle_with_pairs():
    res = find_almost_transitive(Tournament.cycle3(), 2)
    assert res.step_log[0].n_prime == 3
    assert res.q == almost_transitive_q(res.subtournament(), list(range(len(res.ordering))))


@pytest.mark.parametrize("seed", range(5))
def test_fifty_vertices(seed):
    g = Tournament.random(50, seed)
    res = find_almost_transitive(g, 6)
    assert res.q == int(backward_degrees(g, res.ordering).max())
    assert res.copies >= exp(-3 * 6) * count_transitive_subtournaments(g, 6)
    assert res.k_prime == 6 - res.steps
    assert set(res.ordering) == set(res.vertices)


def test_parameters():
    p = StructureParams.from_size(50, 6)
    assert p.step_cap == 4 and p.refinement_steps == 2 and p.outer_iterations == 2
    assert p.epsilon > 1
    with pytest.raises(DomainError):
        StructureParams.from_size(1, 2)


def test_step_log_csv_header():
    res = find_almost_transitive(Tournament.random(20, 1), 4)
    text = step_log_csv(res.step_log)
    assert text.splitlines()[0] == ",".join(STEP_LOG_COLUMNS)
    assert len(text.splitlines()) == len(res.step_log) + 1


def test_iterated_on_transitive():
    res = find_almost_transitive_iterated(Tournament.transitive(20), 4)
    assert res.q == 0
    assert res.subtournament() == Tournament.transitive(len(res.ordering))


@pytest.mark.parametrize("seed", range(10))
def test_iterated_recount_and_monotone(seed):
    g = Tournament.random(50, seed)
    res = find_almost_transitive_iterated(g, 6)
    assert res.q == almost_transitive_q(g.induced(res.ordering), list(range(len(res.ordering))))
    sizes = [res.rounds[0].n_before] + [r.n_after for r in res.rounds]
    assert sizes == sorted(sizes, reverse=True)
    for a, b in zip(res.rounds, res.rounds[1:]):
        assert b.n_before == a.n_after and b.k_before == a.k_after
