"""Increasing subsequences that use each bucket at most once.

Positions and values are 1-based here: ``sigma[x - 1]`` is the value at
position x of a permutation of 1..m.

The search works on a conceptual 0/1 matrix with R = m/(2k) rows and m
columns.  Column x has its single 1 in row y = ceil(sigma(x) * R / m),
i.e. y says which of R equal value ranges sigma(x) falls in.  Positions are
cut into slices S_r = {(r-1)k+1, ..., rk}; phase q scans the strip pairing
row y with slice S_{y+q}, left to right, taking every 1 whose bucket and
slice are still unused.  Rows increase with slices along a strip, so the
columns taken always carry increasing values.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, exp, sqrt
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .rng import make_rng, trial_seed


@dataclass(frozen=True)
class BucketedInterval:
    """Bucket label of every position 1..m; slice width k bounds bucket sizes."""

    k: int
    bucket_of: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be positive")
        sizes = np.bincount(np.asarray(self.bucket_of, dtype=np.int64)) if self.bucket_of else []
        if len(sizes) and max(sizes) > self.k:
            raise DomainError(f"a bucket holds {max(sizes)} positions, more than k={self.k}")

    @classmethod
    def contiguous(cls, m: int, k: int) -> "BucketedInterval":
        return cls(k, tuple(i // k for i in range(m)))

    @classmethod
    def from_buckets(cls, labels: Sequence[int], k: int) -> "BucketedInterval":
        """Relabel arbitrary bucket ids to 0.. in order of first appearance."""
        ids: dict[int, int] = {}
        return cls(k, tuple(ids.setdefault(b, len(ids)) for b in labels))

    @property
    def m(self) -> int:
        return len(self.bucket_of)

    @property
    def rows(self) -> int:
        return max(1, self.m // (2 * self.k))

    @property
    def slice_count(self) -> int:
        return -(-self.m // self.k)

    @property
    def satisfies_size_condition(self) -> bool:
        """Whether m <= k^2, the regime where the failure bound is proven."""
        return self.m <= self.k * self.k

    def bucket(self, x: int) -> int:
        return self.bucket_of[x - 1]

    def slice_of(self, x: int) -> int:
        return (x - 1) // self.k + 1

    def default_length(self) -> int:
        return max(1, ceil(self.m / (8 * self.k)))


class StripMatrix:
    """The 0/1 matrix of a permutation, realised lazily."""

    def __init__(self, sigma: Sequence[int], layout: BucketedInterval):
        sigma = np.asarray(sigma, dtype=np.int64)
        m = layout.m
        if len(sigma) != m or sorted(sigma.tolist()) != list(range(1, m + 1)):
            raise DomainError("sigma must be a permutation of 1..m")
        self.layout = layout
        self.sigma = sigma
        R = layout.rows
        self.row_of = (sigma * R + m - 1) // m  # ceil(sigma * R / m), in 1..R

    @property
    def rows(self) -> int:
        return self.layout.rows

    def entry(self, y: int, x: int) -> int:
        return int(self.row_of[x - 1] == y)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.layout.m), dtype=np.int8)
        out[self.row_of - 1, np.arange(self.layout.m)] = 1
        return out

    def strip(self, q: int) -> Iterator[tuple[int, int]]:
        """Positions (y, x) of diagonal strip q, left to right."""
        lay = self.layout
        for y in range(1, self.rows + 1):
            r = y + q
            if r > lay.slice_count:
                return
            for x in range((r - 1) * lay.k + 1, min(r * lay.k, lay.m) + 1):
                yield y, x


class PhaseResult(NamedTuple):
    phase: int
    columns: tuple[int, ...]
    success: bool
    exposed: int
    ones_seen: int


def scan_phase(matrix: StripMatrix, q: int, ell: int | None) -> PhaseResult:
    """Scan strip q, taking each 1 whose bucket and slice are unused.

    Skipped cells are not exposed.  Stops once ``ell`` columns are taken
    (``ell=None`` scans the whole strip).
    """
    if not 0 <= q < matrix.rows:
        raise DomainError(f"phase must lie in 0..{matrix.rows - 1}, got {q}")
    if ell is not None and ell < 1:
        raise DomainError("target length must be positive")
    lay = matrix.layout
    taken: list[int] = []
    buckets: set[int] = set()
    slices: set[int] = set()
    exposed = ones = 0
    for y, x in matrix.strip(q):
        if lay.bucket(x) in buckets or lay.slice_of(x) in slices:
            continue
        exposed += 1
        if matrix.entry(y, x):
            ones += 1
            taken.append(x)
            buckets.add(lay.bucket(x))
            slices.add(lay.slice_of(x))
            if ell is not None and len(taken) == ell:
                break
    success = ell is not None and len(taken) >= ell
    return PhaseResult(q, tuple(taken), success, exposed, ones)


def is_bucketed_increasing(sigma: Sequence[int], layout: BucketedInterval,
                           columns: Sequence[int]) -> bool:
    cols = list(columns)
    values = [sigma[x - 1] for x in cols]
    buckets = [layout.bucket(x) for x in cols]
    return (all(a < b for a, b in zip(cols, cols[1:]))
            and all(a < b for a, b in zip(values, values[1:]))
            and len(set(buckets)) == len(buckets))


class SearchOutcome(NamedTuple):
    columns: tuple[int, ...]
    phase: int
    phases: tuple[PhaseResult, ...]


def find_bucketed_increasing(sigma: Sequence[int], layout: BucketedInterval,
                             ell: int | None = None) -> SearchOutcome | None:
    """Run phases 0, 1, ... until one yields ``ell`` columns (default
    ceil(m/(8k))); None when every phase fails."""
    if ell is None:
        ell = layout.default_length()
    matrix = StripMatrix(sigma, layout)
    tried = []
    for q in range(matrix.rows):
        res = scan_phase(matrix, q, ell)
        tried.append(res)
        if res.success:
            if not is_bucketed_increasing(sigma, layout, res.columns):
                raise AssertionError(f"phase {q} returned an invalid sequence {res.columns}")
            return SearchOutcome(res.columns, q, tuple(tried))
    return None


def longest_scan(sigma: Sequence[int], layout: BucketedInterval) -> tuple[int, ...]:
    """Longest sequence any single untargeted phase collects."""
    matrix = StripMatrix(sigma, layout)
    best: tuple[int, ...] = ()
    for q in range(matrix.rows):
        cols = scan_phase(matrix, q, None).columns
        if len(cols) > len(best):
            best = cols
    return best


class FailureRate(NamedTuple):
    k: int
    m: int
    ell: int
    trials: int
    failures: int
    rate: float
    bound: float

    @property
    def stderr(self) -> float:
        return sqrt(self.rate * (1 - self.rate) / self.trials)


FAILURE_RATE_COLUMNS = FailureRate._fields


def failure_rate_experiment(k: int, m: int, trials: int, seed: int) -> FailureRate:
    """Fraction of random permutations (contiguous size-k buckets) for which
    every phase fails, next to the bound exp(-m/24)."""
    if m > k * k:
        raise DomainError(f"need m <= k^2, got m={m}, k={k}")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    layout = BucketedInterval.contiguous(m, k)
    ell = layout.default_length()
    failures = 0
    for t in range(trials):
        sigma = make_rng(trial_seed(seed, t)).permutation(m) + 1
        if find_bucketed_increasing(sigma, layout, ell) is None:
            failures += 1
    return FailureRate(k, m, ell, trials, failures, failures / trials, exp(-m / 24))
