"""Small-scale oracles: g(k), max over orderings of chi(G_pi), and the
colour-by-maximum-independent-sets procedure."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .enumeration import CANONICAL_LIMIT, isomorphism_classes
from .errors import DomainError, SizeLimitError
from .graph import SimpleGraph, maximum_independent_set
from .orderings import EXHAUSTIVE_LIMIT, best_ordering_exhaustive
from .pipeline import acyclic_chromatic_pipeline
from .rng import trial_seed
from .tournament import Tournament, format_trn1


class GkRecord(NamedTuple):
    k: int
    n: int
    verdict: str  # "all-tournaments-succeed" or "counterexample"
    counterexample: Tournament | None
    exhaustive: bool


@dataclass(frozen=True)
class GkResult:
    k: int
    value: int
    exact: bool
    ladder: tuple[GkRecord, ...]

    @property
    def label(self) -> str:
        return "exact" if self.exact else "lower-bound-only"


def _reaches(g: Tournament, k: int) -> bool:
    if g.n < k:
        return False
    return best_ordering_exhaustive(g, stop_at=k)[1] >= k


def g_of_k_exhaustive(k: int, *, sampling: bool = False, samples: int = 200, seed: int = 0,
                      max_n: int = EXHAUSTIVE_LIMIT) -> GkResult:
    """Least n such that every n-vertex tournament has an ordering with
    chi(G_pi) >= k.

    Sizes n <= 6 are settled over all tournaments (one per isomorphism
    class).  Larger sizes are only examined with ``sampling=True``: random
    tournaments are searched for counterexamples, and if a size turns up none
    the result is a lower bound on g(k), flagged as not exact.
    """
    if k < 1:
        raise DomainError("k must be positive")
    ladder = []
    for n in range(k, max_n + 1):
        if n <= CANONICAL_LIMIT:
            bad = next((c.tournament for c in isomorphism_classes(n) if not _reaches(c.tournament, k)), None)
            if bad is None:
                ladder.append(GkRecord(k, n, "all-tournaments-succeed", None, True))
                return GkResult(k, n, True, tuple(ladder))
            ladder.append(GkRecord(k, n, "counterexample", bad, True))
            continue
        if not sampling:
            raise SizeLimitError(
                f"g({k}) needs tournaments on more than {CANONICAL_LIMIT} vertices, "
                    "past the exhaustive limit (use sampling)"
            )
        bad = None
        for s in range(samples):
            g = Tournament.random(n, trial_seed(seed, s))
            if not _reaches(g, k):
                bad = g
                break
        if bad is None:
            ladder.append(GkRecord(k, n, "no-counterexample-sampled", None, False))
            return GkResult(k, n, False, tuple(ladder))
        ladder.append(GkRecord(k, n, "counterexample", bad, False))
    raise SizeLimitError(f"no answer for g({k}) with n <= {max_n}")


def gk_rows(result: GkResult) -> list[tuple]:
    rows = []
    for rec in result.ladder:
        bits = ""
        if rec.counterexample is not None:
            bits = "".join(format_trn1(rec.counterexample).splitlines()[1:])
        rows.append((rec.k, rec.n, rec.verdict, int(rec.exhaustive), bits, result.value, result.label))
    return rows


# ---------------------------------------------------------------------------


class AcNumber(NamedTuple):
    """max over orderings of chi(G_pi): exact, or a (lower, upper) bracket."""

    exact: bool
    lower: int
    upper: int

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None


def disjoint_cyclic_triangles(g: Tournament) -> list[tuple[int, int, int]]:
    """Greedy packing of vertex-disjoint directed triangles (lexicographic scan)."""
    a = g.adjacency
    used = np.zeros(g.n, dtype=bool)
    out = []
    for x, y, z in combinations(range(g.n), 3):
        if used[x] or used[y] or used[z]:
            continue
        if (a[x, y] and a[y, z] and a[z, x]) or (a[y, x] and a[z, y] and a[x, z]):
            out.append((x, y, z))
            used[[x, y, z]] = True
    return out


def ac_number(g: Tournament, seed: int = 0) -> AcNumber:
    """Exhaustive for n <= 9.  Beyond that the lower end is the pipeline's
    certificate; the upper end is n minus a packing of disjoint directed
    triangles, since every ordering sends one edge of each such triangle
    backwards and the missing pairs can share colours."""
    if g.n <= EXHAUSTIVE_LIMIT:
        chi = best_ordering_exhaustive(g)[1]
        return AcNumber(True, chi, chi)
    lower = acyclic_chromatic_pipeline(g, seed).chi_lower
    upper = g.n - len(disjoint_cyclic_triangles(g))
    return AcNumber(lower == upper, lower, upper)


# ---------------------------------------------------------------------------


class MisColouring(NamedTuple):
    colours: tuple[int, ...]
    class_sizes: tuple[int, ...]
    greedy_classes: int

    @property
    def colour_count(self) -> int:
        return len(self.class_sizes)


def greedy_colour_by_mis(g: SimpleGraph, stop_threshold: float) -> MisColouring:
    """Take maximum independent sets as colour classes while more than
    ``stop_threshold`` vertices remain, then give each leftover vertex its
    own colour."""
    colours = [-1] * g.n
    remaining = list(range(g.n))
    sizes = []
    while remaining and len(remaining) > stop_threshold:
        local = maximum_independent_set(g.induced(remaining))
        cls = [remaining[i] for i in local]
        for v in cls:
            colours[v] = len(sizes)
        sizes.append(len(cls))
        taken = set(cls)
        remaining = [v for v in remaining if v not in taken]
    greedy = len(sizes)
    for v in remaining:
        colours[v] = len(sizes)
        sizes.append(1)
    return MisColouring(tuple(colours), tuple(sizes), greedy)
