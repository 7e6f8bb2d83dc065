"""Counting and listing transitive subtournaments T_k."""

from __future__ import annotations

from math import comb, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .rng import make_rng
from .tournament import Tournament


def _check_k(g: Tournament, k: int):
    if not 1 <= k <= g.n:
        raise DomainError(f"k must satisfy 1 <= k <= n={g.n}, got {k}")


def _chains(adj: np.ndarray, length: int):
    """All transitive vertex sets of the given size, each listed once in its
    topological order (source first), plus the common out-neighbourhood of
    each chain.

    Every transitive set has a unique topological order, so extending a chain
    only by vertices beaten by all of its members enumerates each set once.
    """
    n = adj.shape[0]
    chains = np.arange(n, dtype=np.int32)[:, None]
    cand = adj.copy()
    for _ in range(length - 1):
        idx, nxt = np.nonzero(cand)
        chains = np.column_stack([chains[idx], nxt.astype(np.int32)])
        cand = cand[idx] & adj[nxt]
    return chains, cand


def transitive_subsets(g: Tournament, k: int, vertices: Sequence[int] | None = None) -> np.ndarray:
    """Every k-subset of ``vertices`` (default: all) inducing T_k.

    Returns an ``(m, k)`` int32 array of original vertex labels, each row
    sorted ascending, rows in lexicographic order.
    """
    verts = np.arange(g.n) if vertices is None else np.asarray(sorted(vertices), dtype=int)
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if k > len(verts):
        return np.zeros((0, k), dtype=np.int32)
    sub = g.adjacency[np.ix_(verts, verts)]
    chains, _ = _chains(sub, k)
    rows = np.sort(verts[chains].astype(np.int32), axis=1)
    if len(rows) == 0:
        return rows.reshape(0, k)
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def count_transitive_subtournaments(g: Tournament, k: int) -> int:
    """Exact number of k-vertex subsets S with g[S] transitive."""
    _check_k(g, k)
    if k == 1:
        return g.n
    _, cand = _chains(g.adjacency, k - 1)
    return int(cand.sum())


class Estimate(NamedTuple):
    value: float
    stderr: float
    trials: int


def estimate_transitive_subtournaments(g: Tournament, k: int, trials: int, seed: int,
                                       batch: int = 10_000) -> Estimate:
    """Monte Carlo estimate ``C(n,k) * (fraction of sampled k-sets inducing T_k)``."""
    _check_k(g, k)
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = make_rng(seed)
    n = g.n
    adj = g.adjacency
    target = np.arange(k)
    hits = 0
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        # uniform k-subsets: first k columns of independent random permutations
        picks = np.argsort(rng.random((b, n)), axis=1)[:, :k]
        sub = adj[picks[:, :, None], picks[:, None, :]]
        out = np.sort(sub.sum(axis=2), axis=1)
        hits += int((out == target).all(axis=1).sum())
        done += b
    p = hits / trials
    total = comb(n, k)
    return Estimate(total * p, total * sqrt(p * (1 - p) / trials), trials)
