from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_tournaments import (
    Tournament,
    count_transitive_subtournaments,
    estimate_transitive_subtournaments,
    transitive_subsets,
)
from acyclic_tournaments.errors import DomainError

from oracles import brute_transitive_count, is_transitive_set


def test_cycle_has_no_transitive_triple():
    assert count_transitive_subtournaments(Tournament.cycle3(), 3) == 0


@pytest.mark.parametrize("n,k", [(5, 1), (6, 3), (9, 4), (10, 10)])
def test_transitive_tournament_counts(n, k):
    assert count_transitive_subtournaments(Tournament.transitive(n), k) == comb(n, k)


def test_rotational_five():
    g = Tournament.rotational(5, [1, 2])
    assert count_transitive_subtournaments(g, 3) == brute_transitive_count(g.adjacency, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 10_000), st.data())
def test_counts_match_subset_enumeration(n, seed, data):
    k = data.draw(st.integers(1, n))
    g = Tournament.random(n, seed)
    assert count_transitive_subtournaments(g, k) == brute_transitive_count(g.adjacency, k)


def test_listed_subsets_are_transitive_and_distinct():
    g = Tournament.random(11, 8)
    rows = transitive_subsets(g, 4)
    assert len({tuple(r) for r in rows.tolist()}) == len(rows)
    assert all(is_transitive_set(g.adjacency, r) for r in rows.tolist())
    assert len(rows) == brute_transitive_count(g.adjacency, 4)


def test_k_out_of_range():
    g = Tournament.random(4, 0)
    with pytest.raises(DomainError):
        count_transitive_subtournaments(g, 0)
    with pytest.raises(DomainError):
        count_transitive_subtournaments(g, 5)


def test_estimates_are_exact_in_degenerate_cases():
    est = estimate_transitive_subtournaments(Tournament.transitive(9), 4, 500, 3)
    assert (est.value, est.stderr) == (comb(9, 4), 0.0)
    est = estimate_transitive_subtournaments(Tournament.cycle3(), 3, 500, 3)
    assert (est.value, est.stderr) == (0.0, 0.0)


def test_estimate_within_three_standard_errors():
    g = Tournament.random(12, 21)
    exact = count_transitive_subtournaments(g, 4)
    est = estimate_transitive_subtournaments(g, 4, 100_000, 5)
    assert abs(est.value - exact) <= 3 * est.stderr
    assert est == estimate_transitive_subtournaments(g, 4, 100_000, 5)
