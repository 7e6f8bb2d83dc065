"""Undirected simple graphs and the exact/greedy algorithms run on them.

Graphs are stored as a read-only symmetric boolean matrix; the search
routines work on per-vertex neighbourhood bitmasks (Python ints), which is
the fastest representation available without compiled code.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, SizeLimitError
from .rng import make_rng

EXACT_CHROMATIC_CUTOFF = 40


class SimpleGraph:
    """Undirected graph on vertices ``0..n-1`` without loops or multi-edges."""

    def __init__(self, adjacency):
        a = np.array(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("adjacency must be a square matrix")
        if a.diagonal().any():
            raise DomainError("self-loops are not allowed")
        if not np.array_equal(a, a.T):
            raise DomainError("adjacency must be symmetric")
        a.setflags(write=False)
        self._adj = a

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def random(cls, n: int, p: float, seed: int) -> "SimpleGraph":
        upper = np.triu(make_rng(seed).random((n, n)) < p, 1)
        return cls(upper | upper.T)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @cached_property
    def nbrs(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitmask."""
        return _bitmasks(self._adj)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return frozenset(zip(us.tolist(), vs.tolist()))

    @property
    def edge_count(self) -> int:
        return int(self._adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(~self._adj & ~np.eye(self.n, dtype=bool))

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        idx = np.asarray(vertices, dtype=int)
        return SimpleGraph(self._adj[np.ix_(idx, idx)])

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self._adj[u, v] for u, v in combinations(vs, 2))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return len(set(vs)) == len(vs) and all(self._adj[u, v] for u, v in combinations(vs, 2))

    def __eq__(self, other):
        return isinstance(other, SimpleGraph) and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edge_count})"


def _bitmasks(adj: np.ndarray) -> tuple[int, ...]:
    n = adj.shape[0]
    if n == 0:
        return ()
    # pack each row little-endian so that bit j of the int is column j
    packed = np.packbits(adj, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# maximum clique / independent set


def _max_clique(nbrs: Sequence[int], cand: int) -> list[int]:
    """Branch and bound with greedy-colouring bounds (Tomita-Seki style).

    ``nbrs`` must already be relabelled so that low bit positions hold the
    vertices that should be coloured first (high degree).
    """
    best: list[int] = []

    def colour_sort(P):
        order, bounds = [], []
        colour = 0
        while P:
            colour += 1
            avail = P
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~nbrs[v] & ~low
                P &= ~low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R, P):
        nonlocal best
        order, bounds = colour_sort(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= len(best):
                return
            v = order[i]
            sub = P & nbrs[v]
            if sub:
                expand(R + [v], sub)
            elif len(R) + 1 > len(best):
                best = R + [v]
            P &= ~(1 << v)

    if cand:
        expand([], cand)
    return best


def _clique_search(adj: np.ndarray) -> list[int]:
    n = adj.shape[0]
    if n == 0:
        return []
    # pivot on degree: high-degree vertices get the low bit positions
    order = np.argsort(-adj.sum(axis=1), kind="stable")
    relabelled = adj[np.ix_(order, order)]
    found = _max_clique(_bitmasks(relabelled), (1 << n) - 1)
    return sorted(int(order[v]) for v in found)


def maximum_clique(g: SimpleGraph) -> list[int]:
    """A maximum clique of ``g``, as a sorted vertex list."""
    return _clique_search(g.adjacency)


def maximum_independent_set(g: SimpleGraph) -> list[int]:
    """A maximum independent set of ``g``, as a sorted vertex list."""
    comp = ~g.adjacency & ~np.eye(g.n, dtype=bool)
    return _clique_search(comp)


def independence_number(g: SimpleGraph) -> int:
    return len(maximum_independent_set(g))


def clique_number(g: SimpleGraph) -> int:
    return len(maximum_clique(g))


def greedy_clique(g: SimpleGraph) -> list[int]:
    """Grow a clique from the highest-degree vertex, always adding the
    candidate of largest degree (ties by lowest label)."""
    if g.n == 0:
        return []
    deg = g.degrees()
    nbrs = g.nbrs
    cand = (1 << g.n) - 1
    clique = []
    while cand:
        v = max(_bits(cand), key=lambda u: (deg[u], -u))
        clique.append(v)
        cand &= nbrs[v]
    return sorted(clique)


# ---------------------------------------------------------------------------
# colouring


def degeneracy_order(g: SimpleGraph) -> list[int]:
    """Smallest-last order: repeatedly strip a minimum-degree vertex (lowest
    label on ties); the returned order is the reverse of the stripping."""
    deg = g.degrees().astype(int).tolist()
    alive = set(range(g.n))
    stripped = []
    adj = g.adjacency
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        stripped.append(v)
        alive.remove(v)
        for u in np.flatnonzero(adj[v]):
            if u in alive:
                deg[u] -= 1
    return stripped[::-1]


def greedy_colouring(g: SimpleGraph, order: Sequence[int] | None = None) -> list[int]:
    """First-fit colouring along ``order`` (default: degeneracy order)."""
    if order is None:
        order = degeneracy_order(g)
    colours = [-1] * g.n
    adj = g.adjacency
    for v in order:
        used = {colours[u] for u in np.flatnonzero(adj[v]) if colours[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colours[v] = c
    return colours


def is_proper_colouring(g: SimpleGraph, colours: Sequence[int]) -> bool:
    if len(colours) != g.n or any(c < 0 for c in colours):
        return False
    return all(colours[u] != colours[v] for u, v in g.edges)


def chromatic_bounds(g: SimpleGraph) -> tuple[int, int]:
    """Cheap ``(lower, upper)`` bracket on the chromatic number.

    The lower bound is a greedily grown clique, the upper bound the number of
    colours used by first-fit in degeneracy order.
    """
    if g.n == 0:
        return 0, 0
    lower = len(greedy_clique(g))
    upper = max(greedy_colouring(g)) + 1
    return lower, upper


def _k_colour(nbrs: Sequence[int], n: int, k: int) -> list[int] | None:
    """DSATUR backtracking: a proper k-colouring or None."""
    colours = [-1] * n
    classes = [0] * k
    degree = [m.bit_count() for m in nbrs]

    def pick():
        best, best_key = -1, None
        for v in range(n):
            if colours[v] >= 0:
                continue
            sat = sum(1 for c in range(k) if classes[c] & nbrs[v])
            key = (sat, degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(done, used):
        if done == n:
            return True
        v = pick()
        for c in range(min(k, used + 1)):
            if classes[c] & nbrs[v]:
                continue
            colours[v] = c
            classes[c] |= 1 << v
            if solve(done + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            colours[v] = -1
        return False

    return colours if solve(0, 0) else None


def exact_colouring(g: SimpleGraph, cutoff: int = EXACT_CHROMATIC_CUTOFF) -> list[int]:
    """An optimal proper colouring of ``g`` (colours ``0..chi-1``).

    Tries k = clique number, k+1, ... below the greedy bound until the
    DSATUR search finds a k-colouring.
    """
    if g.n > cutoff:
        raise SizeLimitError(
            f"exact colouring limited to n <= {cutoff} (got n={g.n}); use chromatic_bounds"
        )
    if g.n == 0:
        return []
    greedy = greedy_colouring(g)
    upper = max(greedy) + 1
    lower = clique_number(g)
    for k in range(lower, upper):
        found = _k_colour(g.nbrs, g.n, k)
        if found is not None:
            return found
    return greedy


def chromatic_number(g: SimpleGraph, cutoff: int = EXACT_CHROMATIC_CUTOFF) -> int:
    """Exact chromatic number (0 for the empty vertex set)."""
    colours = exact_colouring(g, cutoff)
    return max(colours) + 1 if colours else 0


def colour_classes(colours: Sequence[int]) -> list[list[int]]:
    if not colours:
        return []
    classes = [[] for _ in range(max(colours) + 1)]
    for v, c in enumerate(colours):
        classes[c].append(v)
    return classes


def check_vertex_set(g_n: int, vertices: Iterable[int]) -> list[int]:
    vs = sorted(set(int(v) for v in vertices))
    if vs and (vs[0] < 0 or vs[-1] >= g_n):
        raise DomainError(f"vertex labels must lie in 0..{g_n - 1}")
    return vs
