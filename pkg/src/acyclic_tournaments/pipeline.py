"""Acyclic subgraphs of large chromatic number, end to end.

With k = ceil(n^(4/9)): if g has fewer than k! copies of T_k, a random
ordering search finds pi with alpha(G_pi) <= k, hence chi(G_pi) >= n/k.
Otherwise an almost-transitive subtournament is extracted and its ordering
is perturbed blockwise.  Every candidate ordering gets a checkable lower
bound on chi(G_pi) and the best one is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb, factorial, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .counting import count_transitive_subtournaments, estimate_transitive_subtournaments
from .errors import DomainError, ProcedureExhausted, SizeLimitError
from .graph import EXACT_CHROMATIC_CUTOFF, greedy_clique, independence_number, maximum_clique
from .orderings import BlockedOrderingSpec, blocked_ordering, random_ordering, search_low_alpha_ordering
from .structure import IteratedResult, find_almost_transitive_iterated
from .tournament import Ordering, Tournament, as_ordering, forward_subgraph

EXACT_COUNT_LIMIT = 2_000_000
ESTIMATE_TRIALS = 20_000


class Certificate(NamedTuple):
    """chi(G_pi) >= max(|clique|, ceil(n/alpha)); both parts re-checkable."""

    clique: tuple[int, ...]
    alpha: int
    lower: int


def certify(g: Tournament, pi) -> Certificate:
    """Lower-bound certificate for chi(G_pi).

    The clique is exact for n up to the exact-colouring cutoff and greedy
    beyond it; alpha is always exact.
    """
    graph = forward_subgraph(g, pi)
    if g.n == 0:
        return Certificate((), 0, 0)
    clique = maximum_clique(graph) if g.n <= EXACT_CHROMATIC_CUTOFF else greedy_clique(graph)
    alpha = independence_number(graph)
    return Certificate(tuple(clique), alpha, max(len(clique), -(-g.n // alpha)))


def verify_certificate(g: Tournament, pi, cert: Certificate) -> bool:
    graph = forward_subgraph(g, pi)
    if not graph.is_clique(cert.clique):
        return False
    if independence_number(graph) != cert.alpha:
        return False
    return cert.lower == max(len(cert.clique), -(-g.n // cert.alpha) if cert.alpha else 0)


def complete_ordering(g: Tournament, partial: Sequence[int]) -> Ordering:
    """Extend an ordering of some vertices to all of them.

    Missing vertices are inserted one at a time, highest out-degree first
    (lowest label on ties), each at the earliest position that maximises the
    number of its edges pointing forwards.
    """
    seq = [int(v) for v in partial]
    present = set(seq)
    adj = g.adjacency
    out = g.out_degrees()
    missing = sorted((v for v in range(g.n) if v not in present), key=lambda v: (-out[v], v))
    for v in missing:
        if not seq:
            seq.append(v)
            continue
        s = np.asarray(seq)
        # inserting at p: forward edges = #{seq[:p] beating v} + #{seq[p:] beaten by v}
        before = np.concatenate([[0], np.cumsum(adj[s, v])])
        after = np.concatenate([np.cumsum(adj[v, s][::-1])[::-1], [0]])
        seq.insert(int(np.argmax(before + after)), v)
    return Ordering(tuple(seq))


class Candidate(NamedTuple):
    name: str
    ordering: Ordering
    certificate: Certificate


@dataclass(frozen=True, eq=False)
class PipelineResult:
    ordering: Ordering
    certificate: Certificate
    branch: str
    k: int
    copies: float
    copies_exact: bool
    candidates: tuple[Candidate, ...]
    structure: IteratedResult | None = None
    blocks: int | None = None

    @property
    def chi_lower(self) -> int:
        return self.certificate.lower

    @property
    def chosen(self) -> str:
        return next(c.name for c in self.candidates if c.ordering == self.ordering)


def count_copies(g: Tournament, k: int, seed: int = 0) -> tuple[float, bool]:
    """Number of T_k copies: exact when C(n,k) is small, estimated otherwise."""
    if comb(g.n, k) <= EXACT_COUNT_LIMIT:
        return float(count_transitive_subtournaments(g, k)), True
    est = estimate_transitive_subtournaments(g, k, ESTIMATE_TRIALS, seed)
    return est.value, False


def acyclic_chromatic_pipeline(g: Tournament, seed: int = 0) -> PipelineResult:
    n = g.n
    if n < 2:
        raise DomainError("the pipeline needs at least two vertices")
    k = min(n, ceil(n ** (4 / 9)))
    copies, exact = count_copies(g, k, seed)
    proposals: list[tuple[str, Ordering]] = []
    structure = None
    blocks = None
    if copies < factorial(k):
        branch = "few-copies"
        found = search_low_alpha_ordering(g, k, seed=seed)
        if found is not None:
            proposals.append(("low-alpha", found.ordering))
    else:
        branch = "almost-transitive"
        try:
            structure = find_almost_transitive_iterated(g, k)
        except (ProcedureExhausted, SizeLimitError):
            branch = "almost-transitive-unavailable"
        if structure is not None:
            m = len(structure.ordering)
            q = structure.q
            blocks = m if q == 0 else max(1, min(m, ceil(sqrt(m / q))))
            spec = BlockedOrderingSpec(Ordering.identity(m), blocks, seed)
            local = blocked_ordering(spec)
            perturbed = [structure.ordering[i] for i in local]
            proposals.append(("blocked", complete_ordering(g, perturbed)))
            proposals.append(("aligned", complete_ordering(g, structure.ordering)))
    proposals.append(("random", random_ordering(n, seed)))

    candidates = tuple(Candidate(name, pi, certify(g, pi)) for name, pi in proposals)
    best = max(candidates, key=lambda c: c.certificate.lower)  # first maximum wins
    return PipelineResult(best.ordering, best.certificate, branch, k, copies, exact,
                          candidates, structure, blocks)
