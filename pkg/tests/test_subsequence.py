from math import ceil

import numpy as np
import pytest
from scipy import stats

from acyclic_tournaments.errors import DomainError
from acyclic_tournaments.subsequence import (
    BucketedInterval,
    StripMatrix,
    failure_rate_experiment,
    find_bucketed_increasing,
    is_bucketed_increasing,
    scan_phase,
)

from oracles import brute_bucketed_increasing_exists

# k=3, m=24: positions 1..24 in three-wide slices, eight buckets of size 3
WORKED_SIGMA = [8, 9, 10, 7, 1, 5, 2, 14, 4, 3, 19, 13, 15, 20, 11, 6, 12, 16, 17, 18, 21, 22, 23, 24]
WORKED_BUCKETS = [{1, 2, 3}, {4, 8, 16}, {5, 9, 13}, {6, 7, 10},
                  {11, 15, 17}, {12, 18, 19}, {14, 20, 21}, {22, 23, 24}]


def worked_layout():
    label = {x: b for b, xs in enumerate(WORKED_BUCKETS) for x in xs}
    return BucketedInterval(3, tuple(label[x] for x in range(1, 25)))


def test_worked_example_trace():
    layout = worked_layout()
    matrix = StripMatrix(WORKED_SIGMA, layout)
    assert matrix.rows == 4
    first = scan_phase(matrix, 0, 3)
    assert first.columns == (4, 11) and not first.success
    second = scan_phase(matrix, 1, 3)
    assert second.columns == (5, 12, 14) and second.success
    out = find_bucketed_increasing(WORKED_SIGMA, layout, 3)
    assert out.columns == (5, 12, 14) and out.phase == 1
    assert [p.columns for p in out.phases] == [(4, 11), (5, 12, 14)]


def _place(slices_to_rows, k, m):
    """A permutation whose first slices put their values in chosen rows."""
    rows = max(1, m // (2 * k))
    per_row = m // rows
    pools = {y: list(range((y - 1) * per_row + 1, y * per_row + 1)) for y in range(1, rows + 1)}
    sigma = [0] * m
    for r, y in slices_to_rows.items():
        for x in range((r - 1) * k + 1, r * k + 1):
            sigma[x - 1] = pools[y].pop(0)
    rest = sorted(v for pool in pools.values() for v in pool)
    for i in range(m):
        if sigma[i] == 0:
            sigma[i] = rest.pop(0)
    return sigma


def test_all_ones_strip_takes_one_column_per_slice():
    k, m = 2, 16
    sigma = _place({1: 1, 2: 2, 3: 3, 4: 4}, k, m)
    layout = BucketedInterval(k, tuple(range(m)))  # singleton buckets
    res = scan_phase(StripMatrix(sigma, layout), 0, 4)
    assert res.success and res.columns == (1, 3, 5, 7)


def test_all_zeros_strip_fails():
    k, m = 2, 16
    sigma = _place({1: 2, 2: 3, 3: 4, 4: 1}, k, m)
    layout = BucketedInterval(k, tuple(range(m)))
    res = scan_phase(StripMatrix(sigma, layout), 0, 1)
    assert not res.success and res.columns == () and res.ones_seen == 0


def test_invalid_phase_and_length():
    matrix = StripMatrix(list(range(1, 17)), BucketedInterval.contiguous(16, 2))
    with pytest.raises(DomainError):
        scan_phase(matrix, matrix.rows, 1)
    with pytest.raises(DomainError):
        scan_phase(matrix, 0, 0)


def test_layout_validation():
    with pytest.raises(DomainError):
        BucketedInterval(2, (0, 0, 0, 1))
    with pytest.raises(DomainError):
        StripMatrix([1, 1, 2, 3], BucketedInterval.contiguous(4, 2))


def test_identity_and_reversal():
    k, m = 4, 16
    singletons = BucketedInterval(k, tuple(range(m)))
    out = find_bucketed_increasing(list(range(1, m + 1)), singletons)
    assert out is not None and out.phase == 0
    rev = list(range(2 * k, 0, -1))
    assert find_bucketed_increasing(rev, BucketedInterval.contiguous(2 * k, k), 1) is not None


def test_matches_exhaustive_search_on_small_instances():
    rng = np.random.default_rng(0)
    k, m = 4, 16
    layout = BucketedInterval.contiguous(m, k)
    assert layout.default_length() == 1
    for _ in range(300):
        sigma = (rng.permutation(m) + 1).tolist()
        found = find_bucketed_increasing(sigma, layout) is not None
        assert found == brute_bucketed_increasing_exists(sigma, layout.bucket_of, 1)


@pytest.mark.parametrize("ell", [2, 3])
def test_sound_on_longer_targets(ell):
    rng = np.random.default_rng(ell)
    k, m = 3, 9
    layout = BucketedInterval.contiguous(m, k)
    for _ in range(300):
        sigma = (rng.permutation(m) + 1).tolist()
        out = find_bucketed_increasing(sigma, layout, ell)
        if out is not None:
            assert is_bucketed_increasing(sigma, layout, out.columns)
            assert brute_bucketed_increasing_exists(sigma, layout.bucket_of, ell)


def test_matrix_structure():
    rng = np.random.default_rng(3)
    k, m = 4, 32
    layout = BucketedInterval.contiguous(m, k)
    matrix = StripMatrix(rng.permutation(m) + 1, layout)
    dense = matrix.dense()
    assert (dense.sum(axis=0) == 1).all()
    strips = [set(matrix.strip(q)) for q in range(matrix.rows)]
    assert all(len(s) == m // 2 for s in strips)
    seen = set()
    for s in strips:
        assert not seen & s
        seen |= s


def test_row_of_a_column_is_uniform():
    rng = np.random.default_rng(11)
    k, m = 2, 16
    layout = BucketedInterval.contiguous(m, k)
    rows = [StripMatrix(rng.permutation(m) + 1, layout).row_of[5] for _ in range(100_000)]
    counts = np.bincount(rows)[1:]
    assert len(counts) == layout.rows
    assert stats.chisquare(counts).pvalue > 0.01


def test_exposure_never_exceeds_target():
    rng = np.random.default_rng(5)
    layout = BucketedInterval.contiguous(64, 8)
    for _ in range(200):
        sigma = rng.permutation(64) + 1
        out = find_bucketed_increasing(sigma, layout, 2)
        for phase in (out.phases if out else []):
            assert phase.ones_seen <= 2


def test_failure_rate_small_target_never_fails():
    assert failure_rate_experiment(8, 64, 500, 0).failures == 0
    assert failure_rate_experiment(6, 36, 500, 1).failures == 0


def test_failure_rate_against_bound():
    res = failure_rate_experiment(16, 256, 2000, 1)
    assert res.ell == ceil(256 / 128)
    assert res.rate <= res.bound + 3 * res.stderr
    assert res == failure_rate_experiment(16, 256, 2000, 1)


def test_failure_rate_needs_small_m():
    with pytest.raises(DomainError):
        failure_rate_experiment(4, 17, 10, 0)
