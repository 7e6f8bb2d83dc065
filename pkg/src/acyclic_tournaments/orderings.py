"""Random, block-perturbed, and exhaustively optimal vertex orderings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SizeLimitError
from .graph import independence_number
from .rng import make_rng, trial_seed
from .tournament import Ordering, Tournament, as_ordering, forward_subgraph

DEFAULT_MAX_TRIALS = 1000
EXHAUSTIVE_LIMIT = 9


def random_ordering(n: int, seed: int) -> Ordering:
    """Uniform permutation of ``0..n-1`` (Fisher-Yates on the seeded PCG64 stream)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return Ordering(tuple(make_rng(seed).permutation(n).tolist()))


class SearchResult(NamedTuple):
    ordering: Ordering
    alpha: int
    trial: int


def search_low_alpha_ordering(g: Tournament, k: int, max_trials: int = DEFAULT_MAX_TRIALS,
                              seed: int = 0) -> SearchResult | None:
    """First random ordering (trial t uses seed ``seed ^ t``) whose forward
    graph has independence number at most k, or None."""
    for t in range(max_trials):
        pi = random_ordering(g.n, trial_seed(seed, t))
        alpha = independence_number(forward_subgraph(g, pi))
        if alpha <= k:
            return SearchResult(pi, alpha, t)
    return None


@dataclass(frozen=True)
class BlockedOrderingSpec:
    base: Ordering
    block_count: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", as_ordering(self.base))
        n = len(self.base)
        if n == 0 and self.block_count == 0:
            return
        if not 1 <= self.block_count <= max(n, 1):
            raise DomainError(f"block count must lie in 1..{n}, got {self.block_count}")

    def block_sizes(self) -> list[int]:
        n, s = len(self.base), self.block_count
        if n == 0:
            return []
        q, r = divmod(n, s)
        return [q + 1] * r + [q] * (s - r)


def blocked_ordering(spec: BlockedOrderingSpec) -> Ordering:
    """Cut the base ordering into contiguous blocks and shuffle inside each.

    Blocks are shuffled left to right with successive ``permutation`` calls on
    one generator, so with a single block over the identity base this equals
    ``random_ordering(n, seed)``.
    """
    rng = make_rng(spec.seed)
    base = spec.base.perm
    out = []
    start = 0
    for size in spec.block_sizes():
        block = base[start:start + size]
        out.extend(block[i] for i in rng.permutation(size))
        start += size
    return Ordering(tuple(out))


def block_index(spec: BlockedOrderingSpec) -> dict[int, int]:
    """Map each vertex to the block it falls in."""
    out = {}
    start = 0
    for b, size in enumerate(spec.block_sizes()):
        for v in spec.base.perm[start:start + size]:
            out[v] = b
        start += size
    return out


def _all_orderings(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(f"exhaustive ordering search limited to n <= {EXHAUSTIVE_LIMIT}")
    perms = np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, max(n, 1))[:, :n]
    return perms, np.argsort(perms, axis=1).astype(np.int8)


def _independent_where(g: Tournament, pos: np.ndarray) -> dict[int, np.ndarray]:
    """{subset bitmask: bool vector over orderings, True where it is independent in G_pi}.

    A vertex set is independent in G_pi exactly when it induces a transitive
    subtournament that pi lists in reverse topological order, so only
    transitive subsets get an entry.
    """
    n = g.n
    adj = g.adjacency
    out = {}
    for mask in range(1, 1 << n):
        verts = [v for v in range(n) if mask >> v & 1]
        wins = adj[np.ix_(verts, verts)].sum(axis=1)
        if sorted(wins.tolist()) != list(range(len(verts))):
            continue
        chain = [verts[i] for i in np.argsort(-wins)]
        ok = np.ones(len(pos), dtype=bool)
        for a, b in zip(chain, chain[1:]):
            ok &= pos[:, a] > pos[:, b]
        out[mask] = ok
    return out


def independence_numbers_all_orderings(g: Tournament) -> tuple[np.ndarray, np.ndarray]:
    """alpha(G_pi) for every ordering pi, orderings listed lexicographically."""
    perms, pos = _all_orderings(g.n)
    alpha = np.zeros(len(perms), dtype=np.int64)
    for mask, ok in _independent_where(g, pos).items():
        np.maximum(alpha, ok * bin(mask).count("1"), out=alpha)
    return perms, alpha


def chromatic_numbers_all_orderings(g: Tournament) -> tuple[np.ndarray, np.ndarray]:
    """chi(G_pi) for every ordering pi, orderings listed lexicographically.

    Each transitive subset carries a packed bit-vector over all n! orderings
    marking where it is independent; a subset DP (the colour class of the
    lowest remaining vertex, one level per colour) then decides
    c-colourability for all orderings at once.
    """
    n = g.n
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8), np.zeros(1, dtype=np.int64)
    perms, pos = _all_orderings(n)
    count = len(perms)
    full = (1 << n) - 1
    zeros = np.zeros((count + 7) // 8, dtype=np.uint8)
    ones = np.packbits(np.ones(count, dtype=bool))
    indep = {m: np.packbits(ok) for m, ok in _independent_where(g, pos).items()}

    chi = np.zeros(count, dtype=np.int64)
    level = [indep.get(T, zeros) for T in range(full + 1)]  # colourable with 1 colour
    level[0] = ones
    c = 1
    while True:
        done = np.unpackbits(level[full], count=count).astype(bool)
        chi[(chi == 0) & done] = c
        if done.all():
            return perms, chi
        c += 1
        nxt = [ones] + [None] * full
        for T in range(1, full + 1):
            low = T & -T
            rest = T ^ low
            acc = indep.get(low, zeros) & level[rest]
            sub = rest
            while sub:
                S = sub | low
                if S in indep:
                    acc = acc | (indep[S] & level[T ^ S])
                sub = (sub - 1) & rest
            nxt[T] = acc
        level = nxt


def best_ordering_exhaustive(g: Tournament, stop_at: int | None = None) -> tuple[Ordering, int]:
    """Lexicographically least ordering maximising chi(G_pi), over all n!.

    With ``stop_at`` the lexicographically least ordering reaching that value
    is returned instead, when one exists.
    """
    perms, chi = chromatic_numbers_all_orderings(g)
    if stop_at is not None and (chi >= stop_at).any():
        i = int(np.argmax(chi >= stop_at))
    else:
        i = int(np.argmax(chi))
    return Ordering(tuple(int(v) for v in perms[i])), int(chi[i])


def alpha_distribution_sample(g: Tournament, trials: int, seed: int) -> dict[int, int]:
    """Histogram {alpha: count} of alpha(G_pi) over ``trials`` random orderings."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    counts = Counter(
        independence_number(forward_subgraph(g, random_ordering(g.n, trial_seed(seed, t))))
        for t in range(trials)
    )
    return dict(sorted(counts.items()))
