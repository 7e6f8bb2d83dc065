"""Finding large almost-transitive subtournaments.

The procedure grows a transitive prefix W one vertex at a time.  Alongside W
it keeps the hypergraph of vertex sets that extend W to a transitive
tournament on k vertices, pruned to a min-degree core after every step, and
splits the surviving vertices into levels by how many members of W beat
them.  Steps come in two kinds:

* refinement picks an in/out-balanced vertex inside the largest level, so
  levels keep shrinking;
* alignment picks a vertex that conflicts with many vertices on other levels,
  which throws those conflicts away.

Once no alignment is possible, ordering the survivors level by level leaves
few backward edges at every vertex.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import ceil, comb, floor, log, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .counting import estimate_transitive_subtournaments, transitive_subsets
from .errors import DomainError, ProcedureExhausted, SizeLimitError
from .tournament import Tournament, backward_degrees

MAX_HYPERGRAPH_EDGES = 4_000_000
_MAX_CHAIN_CELLS = 300_000_000


# ---------------------------------------------------------------------------
# hypergraphs


@dataclass(frozen=True, eq=False)
class ExtensionHypergraph:
    """Uniform hypergraph with an explicit vertex set.

    ``vertices`` is a sorted int array (isolated vertices allowed), ``edges``
    an ``(m, arity)`` array whose rows are sorted vertex tuples.
    """

    vertices: np.ndarray
    arity: int
    edges: np.ndarray

    def __post_init__(self):
        verts = np.unique(np.asarray(self.vertices, dtype=np.int64))
        edges = np.asarray(self.edges, dtype=np.int32).reshape(-1, self.arity)
        if self.arity < 1:
            raise DomainError("hyperedges must have at least one vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", np.sort(edges, axis=1))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def degrees(self) -> np.ndarray:
        """Degree of each entry of ``vertices``."""
        if len(self.vertices) == 0:
            return np.zeros(0, dtype=np.int64)
        counts = np.bincount(self.edges.ravel(), minlength=int(self.vertices[-1]) + 1)
        return counts[self.vertices]

    def edge_set(self) -> set[tuple[int, ...]]:
        return {tuple(row) for row in self.edges.tolist()}

    def link(self, w: int, vertices: Sequence[int]) -> "ExtensionHypergraph":
        """Edges through ``w`` with ``w`` deleted, on the given vertex set."""
        rows = self.edges[(self.edges == w).any(axis=1)]
        rest = rows[rows != w].reshape(len(rows), self.arity - 1)
        return ExtensionHypergraph(np.asarray(vertices), self.arity - 1, rest)


def min_degree_peel(h: ExtensionHypergraph) -> ExtensionHypergraph:
    """Induced subhypergraph with every degree at least m/n_h.

    m and n_h are the edge and vertex counts of the input.  Vertices below
    the threshold are deleted with their edges until none remain.  Deletion
    only lowers degrees, so the surviving core does not depend on the order of
    deletion; removing all current violators per round gives the same result
    as the one-at-a-time, lowest-label-first rule.
    """
    m, n_h = h.edge_count, h.vertex_count
    if m == 0 or n_h == 0:
        raise DomainError("cannot peel an empty hypergraph")
    verts = h.vertices
    edges = h.edges
    alive = np.ones(len(verts), dtype=bool)
    top = int(verts[-1]) + 1
    while True:
        deg = np.bincount(edges.ravel(), minlength=top)[verts]
        low = alive & (deg * n_h < m)
        if not low.any():
            break
        alive &= ~low
        dead = np.zeros(top, dtype=bool)
        dead[verts[low]] = True
        edges = edges[~dead[edges].any(axis=1)]
    # at most m*(n_h-1)/n_h < m edges were deleted, so the core is nonempty
    return ExtensionHypergraph(verts[alive], h.arity, edges)


# ---------------------------------------------------------------------------
# balanced vertices


def balanced_vertex(g: Tournament, vertices: Sequence[int] | None = None) -> int:
    """A vertex of g[vertices] whose in- and out-degree there are both at
    least (|vertices|-2)/4.

    Follows the counting argument: let A (resp. B) collect the vertices of
    large in-degree (resp. out-degree); take the bigger side and return its
    lowest-label vertex whose out-degree (in-degree for B) inside that side is
    at least the average.  Sets of size <= 2 return their lowest label.
    """
    vs = list(range(g.n)) if vertices is None else sorted(int(v) for v in vertices)
    m = len(vs)
    if m == 0:
        raise DomainError("balanced_vertex needs a nonempty vertex set")
    if m <= 2:
        return vs[0]
    idx = np.asarray(vs)
    sub = g.adjacency[np.ix_(idx, idx)]
    out, inn = sub.sum(axis=1), sub.sum(axis=0)
    side_a = np.flatnonzero(4 * inn >= m - 2)
    side_b = np.flatnonzero(4 * out >= m - 2)
    if len(side_a) >= len(side_b):
        side, within = side_a, sub[np.ix_(side_a, side_a)].sum(axis=1)
    else:
        side, within = side_b, sub[np.ix_(side_b, side_b)].sum(axis=0)
    # average degree inside the side is (|side|-1)/2
    pick = np.flatnonzero(2 * within >= len(side) - 1)[0]
    return vs[int(side[pick])]


# ---------------------------------------------------------------------------
# parameters and state


@dataclass(frozen=True)
class StructureParams:
    k: int
    epsilon: float
    refinement_steps: int
    step_cap: int
    outer_iterations: int

    @classmethod
    def from_size(cls, n: int, k: int) -> "StructureParams":
        """Default schedule for an n-vertex tournament (natural logarithms):
        epsilon = (log n)^2/k, ceil(k/log n) refinements, fewer than
        floor(3k/log n) steps in total, ceil(sqrt(log n)) outer rounds."""
        if n < 2:
            raise DomainError("structure parameters need n >= 2")
        if k < 1:
            raise DomainError("k must be positive")
        L = log(n)
        return cls(
            k=k,
            epsilon=L * L / k,
            refinement_steps=max(1, ceil(k / L)),
            step_cap=floor(3 * k / L),
            outer_iterations=max(1, ceil(sqrt(L))),
        )

    def q_bound(self, n: int) -> float:
        """Backward-degree bound 2n(log n)^2/k that holds for large n."""
        return 2 * n * log(n) ** 2 / self.k


class StepRecord(NamedTuple):
    step: int
    kind: str
    chosen_vertex: int
    v_prime: int
    v: int
    n_prime: int
    n: int
    max_part_size: int


STEP_LOG_COLUMNS = ("step", "kind", "chosen_vertex", "|V'|", "|V|", "N'", "N", "max_part_size")


def step_log_csv(rows: Sequence[StepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STEP_LOG_COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()


@dataclass(frozen=True, eq=False)
class StructureState:
    """Snapshot after i steps: prefix ``w`` (|w| = i), the peeled hypergraph
    H_i on V_i, and the level of every vertex of V_i (aligned with
    ``hypergraph.vertices``)."""

    tournament: Tournament
    k: int
    w: tuple[int, ...]
    hypergraph: ExtensionHypergraph
    levels: np.ndarray
    step_log: tuple[StepRecord, ...] = field(default=())

    @property
    def step(self) -> int:
        return len(self.w)

    @property
    def vertices(self) -> np.ndarray:
        return self.hypergraph.vertices

    def level_partition(self) -> list[np.ndarray]:
        """V_{i,0}, ..., V_{i,i}: vertices of V_i grouped by level."""
        return [self.vertices[self.levels == j] for j in range(self.step + 1)]

    def level_of(self) -> dict[int, int]:
        return dict(zip(self.vertices.tolist(), self.levels.tolist()))


def _check_enumerable(g: Tournament, k: int):
    n = g.n
    if comb(n, k - 1) * n <= _MAX_CHAIN_CELLS and comb(n, k) <= MAX_HYPERGRAPH_EDGES:
        return
    est_k = estimate_transitive_subtournaments(g, k, trials=4000, seed=0).value
    est_k1 = estimate_transitive_subtournaments(g, k - 1, trials=4000, seed=0).value if k > 1 else n
    if est_k > MAX_HYPERGRAPH_EDGES or est_k1 * n > _MAX_CHAIN_CELLS:
        raise SizeLimitError(
            f"about {est_k:.3g} copies of T_{k}; the extension hypergraph is too large to list"
        )


def initial_state(g: Tournament, k: int) -> StructureState:
    """W = {}, H_0' = every T_k vertex set of g, then peeled to H_0."""
    if not 1 <= k <= g.n:
        raise DomainError(f"k must satisfy 1 <= k <= n={g.n}")
    _check_enumerable(g, k)
    edges = transitive_subsets(g, k)
    if len(edges) == 0:
        raise ProcedureExhausted(f"tournament has no transitive subtournament on {k} vertices")
    h_prime = ExtensionHypergraph(np.arange(g.n), k, edges)
    h = min_degree_peel(h_prime)
    levels = np.zeros(h.vertex_count, dtype=np.int64)
    row = StepRecord(0, "init", -1, g.n, h.vertex_count, h_prime.edge_count, h.edge_count,
                     h.vertex_count)
    return StructureState(g, k, (), h, levels, (row,))


def _advance(state: StructureState, w: int, kind: str) -> StructureState:
    g = state.tournament
    adj = g.adjacency
    verts = state.vertices
    lev = state.levels
    lw = lev[verts == w][0]
    # y conflicts with w when the lower-level one of the two is beaten by the other
    incompatible = ((lw < lev) & adj[verts, w]) | ((lev < lw) & adj[w, verts])
    keep = (verts != w) & ~incompatible
    h_prime = state.hypergraph.link(w, verts[keep])
    if h_prime.edge_count == 0:
        raise ProcedureExhausted(f"link of vertex {w} is empty", state.step_log)
    h = min_degree_peel(h_prime)
    old_level = lev[np.searchsorted(verts, h.vertices)]
    new_levels = old_level + adj[w, h.vertices].astype(np.int64)
    max_part = int(np.bincount(new_levels).max()) if len(new_levels) else 0
    row = StepRecord(state.step + 1, kind, int(w), h_prime.vertex_count, h.vertex_count,
                     h_prime.edge_count, h.edge_count, max_part)
    return StructureState(g, state.k, state.w + (int(w),), h, new_levels,
                          state.step_log + (row,))


def refine_step(state: StructureState) -> StructureState:
    """Add a balanced vertex of the largest level (lowest level on ties)."""
    if state.hypergraph.vertex_count == 0:
        raise DomainError("refinement needs a nonempty vertex set")
    parts = state.level_partition()
    largest = max(range(len(parts)), key=lambda j: (len(parts[j]), -j))
    w = balanced_vertex(state.tournament, parts[largest])
    return _advance(state, w, "refinement")


def incompatibility_counts(state: StructureState) -> np.ndarray:
    """For each vertex of V_i, how many vertices of V_i it is incompatible with."""
    verts = state.vertices
    lev = state.levels
    sub = state.tournament.adjacency[np.ix_(verts, verts)]
    lower = lev[:, None] < lev[None, :]
    inc = (lower & sub.T) | (lower.T & sub)
    return inc.sum(axis=1)


def align_step(state: StructureState, epsilon: float) -> StructureState | None:
    """Add the vertex with most incompatibilities if it has at least
    epsilon*|V_i| of them (lowest label on ties); otherwise None."""
    if state.hypergraph.vertex_count == 0:
        return None
    counts = incompatibility_counts(state)
    best = int(np.argmax(counts))
    if counts[best] < epsilon * state.hypergraph.vertex_count:
        return None
    return _advance(state, int(state.vertices[best]), "alignment")


# ---------------------------------------------------------------------------
# the full procedure


@dataclass(frozen=True, eq=False)
class AlmostTransitiveResult:
    tournament: Tournament
    vertices: tuple[int, ...]
    ordering: tuple[int, ...]
    q: int
    k_prime: int
    copies: int
    w: tuple[int, ...]
    levels: dict
    step_log: tuple[StepRecord, ...]
    params: StructureParams

    @property
    def steps(self) -> int:
        return len(self.w)

    @property
    def q_bound(self) -> float:
        return self.params.q_bound(self.tournament.n)

    def subtournament(self) -> Tournament:
        """g[V_t] relabelled so that its vertex i is ``ordering[i]``."""
        return self.tournament.induced(self.ordering)


def find_almost_transitive(g: Tournament, k: int,
                           params: StructureParams | None = None) -> AlmostTransitiveResult:
    """Run ``refinement_steps`` refinements, then alignments while possible.

    Steps stop early when the hypergraph arity would drop to zero or the step
    count would reach ``step_cap``.  When epsilon >= 1 no vertex can reach
    the alignment threshold, and a row of kind ``alignment-skipped`` is logged
    instead.
    """
    if params is None:
        params = StructureParams.from_size(g.n, k)
    state = initial_state(g, k)

    def can_step(s):
        return s.hypergraph.arity >= 2 and s.step + 1 < params.step_cap

    for _ in range(params.refinement_steps):
        if not can_step(state):
            break
        state = refine_step(state)

    if params.epsilon >= 1:
        h = state.hypergraph
        skip = StepRecord(state.step, "alignment-skipped", -1, state.step_log[-1].v_prime,
                          h.vertex_count, state.step_log[-1].n_prime, h.edge_count,
                          state.step_log[-1].max_part_size)
        state = StructureState(g, k, state.w, h, state.levels, state.step_log + (skip,))
    else:
        while can_step(state):
            nxt = align_step(state, params.epsilon)
            if nxt is None:
                break
            state = nxt

    verts = state.vertices
    order = np.lexsort((verts, state.levels))
    ordering = tuple(verts[order].tolist())
    q = int(backward_degrees(g, ordering).max()) if ordering else 0
    return AlmostTransitiveResult(
        tournament=g,
        vertices=tuple(verts.tolist()),
        ordering=ordering,
        q=q,
        k_prime=k - state.step,
        copies=state.hypergraph.edge_count,
        w=state.w,
        levels=state.level_of(),
        step_log=state.step_log,
        params=params,
    )


class Round(NamedTuple):
    n_before: int
    n_after: int
    k_before: int
    k_after: int
    q: int
    copies: int
    vertices: tuple[int, ...]
    ordering: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class IteratedResult:
    tournament: Tournament
    vertices: tuple[int, ...]
    ordering: tuple[int, ...]
    q: int
    rounds: tuple[Round, ...]
    chosen: int

    def subtournament(self) -> Tournament:
        return self.tournament.induced(self.ordering)


def find_almost_transitive_iterated(g: Tournament, k: int) -> IteratedResult:
    """Apply ``find_almost_transitive`` repeatedly to its own output.

    Runs ceil(sqrt(log n)) rounds, each with parameters recomputed for the
    current tournament and k, and returns the round whose output kept the
    largest fraction n_i/n_{i-1} of its input (earliest round on ties).
    Stops early when a round cannot run; the first round must succeed.
    """
    outer = StructureParams.from_size(g.n, k).outer_iterations
    rounds: list[Round] = []
    current = tuple(range(g.n))
    current_k = k
    for i in range(outer):
        if len(current) < 2 or current_k < 2 or current_k > len(current):
            break
        sub = g.induced(current)
        try:
            res = find_almost_transitive(sub, current_k)
        except (ProcedureExhausted, SizeLimitError):
            if i == 0:
                raise
            break
        to_orig = np.asarray(current)
        verts = tuple(sorted(to_orig[list(res.vertices)].tolist()))
        ordering = tuple(to_orig[list(res.ordering)].tolist())
        rounds.append(Round(len(current), len(verts), current_k, res.k_prime, res.q,
                            res.copies, verts, ordering))
        current, current_k = verts, res.k_prime
    if not rounds:
        raise DomainError(f"iteration needs 2 <= k <= n, got k={k}, n={g.n}")
    chosen = max(range(len(rounds)), key=lambda i: (rounds[i].n_after / rounds[i].n_before, -i))
    r = rounds[chosen]
    return IteratedResult(g, r.vertices, r.ordering, r.q, tuple(rounds), chosen)
