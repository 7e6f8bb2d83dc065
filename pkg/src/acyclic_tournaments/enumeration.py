"""Exhaustive enumeration of small tournaments, up to isomorphism if wanted.

A tournament on n vertices is encoded by the integer whose bit e is 1 when
the e-th pair (i, j), i < j in lexicographic order, is oriented i -> j.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, NamedTuple

import numpy as np

from .errors import SizeLimitError
from .tournament import Tournament

CANONICAL_LIMIT = 6


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def all_tournaments(n: int) -> Iterator[Tournament]:
    """Every labelled tournament on n vertices, by increasing code."""
    for code in range(1 << pair_count(n)):
        yield Tournament.from_code(n, code)


def canonical_codes(n: int) -> np.ndarray:
    """For every code 0..2^C(n,2)-1, the least code of an isomorphic
    tournament (minimum over all n! relabellings)."""
    if n > CANONICAL_LIMIT:
        raise SizeLimitError(f"canonical forms are tabulated only for n <= {CANONICAL_LIMIT}")
    m = pair_count(n)
    codes = np.arange(1 << m, dtype=np.int64)
    if m == 0:
        return codes
    bits = ((codes[:, None] >> np.arange(m)) & 1).astype(np.int64)
    iu, ju = np.triu_indices(n, 1)
    index = {(int(i), int(j)): e for e, (i, j) in enumerate(zip(iu, ju))}
    weights = np.int64(1) << np.arange(m, dtype=np.int64)
    best = codes.copy()
    for p in permutations(range(n)):
        src = np.empty(m, dtype=np.int64)
        flip = np.zeros(m, dtype=np.int64)
        for e, (i, j) in enumerate(zip(iu, ju)):
            a, b = p[i], p[j]
            if a < b:
                src[index[(a, b)]] = e
            else:
                src[index[(b, a)]] = e
                flip[index[(b, a)]] = 1
        relabelled = (bits[:, src] ^ flip) @ weights
        np.minimum(best, relabelled, out=best)
    return best


class IsoClass(NamedTuple):
    code: int
    size: int
    tournament: Tournament


def isomorphism_classes(n: int) -> list[IsoClass]:
    """One representative (the least code) per isomorphism class, with the
    number of labelled tournaments in the class."""
    canon = canonical_codes(n)
    reps, counts = np.unique(canon, return_counts=True)
    return [IsoClass(int(c), int(s), Tournament.from_code(n, int(c))) for c, s in zip(reps, counts)]
