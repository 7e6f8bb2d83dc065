"""Tournaments, vertex orderings, and the forward-edge graph of an ordering."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, FormatError, SizeMismatchError
from .graph import SimpleGraph
from .rng import make_rng


class Tournament:
    """A complete orientation of K_n on vertices ``0..n-1``.

    ``adj[u, v]`` is True iff the edge between u and v points u -> v.  The
    matrix is copied on construction and frozen.
    """

    def __init__(self, adjacency):
        a = np.array(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("adjacency must be a square matrix")
        n = a.shape[0]
        if a.diagonal().any():
            raise DomainError("tournaments have no self-loops")
        off = ~np.eye(n, dtype=bool)
        if not np.array_equal(a ^ a.T, off):
            raise DomainError("every pair must be oriented in exactly one direction")
        a.setflags(write=False)
        self._adj = a

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_pair_bits(cls, n: int, bits: Sequence[int]) -> "Tournament":
        """Build from one bit per pair (i<j) in lexicographic pair order; bit 1
        means i -> j."""
        iu, ju = np.triu_indices(n, 1)
        b = np.asarray(bits, dtype=bool)
        if b.shape != iu.shape:
            raise SizeMismatchError(f"expected {iu.size} pair bits, got {b.size}")
        a = np.zeros((n, n), dtype=bool)
        a[iu[b], ju[b]] = True
        a[ju[~b], iu[~b]] = True
        return cls(a)

    @classmethod
    def from_code(cls, n: int, code: int) -> "Tournament":
        """Tournament whose pair bits are the binary digits of ``code``
        (least significant bit = pair (0, 1))."""
        m = n * (n - 1) // 2
        return cls.from_pair_bits(n, [(code >> e) & 1 for e in range(m)])

    @classmethod
    def transitive(cls, n: int, order: Sequence[int] | None = None) -> "Tournament":
        """Transitive tournament in which earlier vertices of ``order`` beat
        later ones (default: i -> j for i < j)."""
        if order is None:
            return cls(np.triu(np.ones((n, n), dtype=bool), 1))
        pos = Ordering(tuple(order)).position
        return cls(pos[:, None] < pos[None, :])

    @classmethod
    def cycle3(cls) -> "Tournament":
        return cls.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    @classmethod
    def rotational(cls, n: int, steps: Iterable[int]) -> "Tournament":
        """Circulant tournament with i -> i+d (mod n) for every d in ``steps``."""
        steps = {d % n for d in steps}
        a = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for d in steps:
                a[i, (i + d) % n] = True
        return cls(a)

    @classmethod
    def from_edges(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Tournament":
        a = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            a[u, v] = True
        return cls(a)

    @classmethod
    def random(cls, n: int, seed: int) -> "Tournament":
        """Uniform random tournament: one fair coin per pair, in pair order."""
        m = n * (n - 1) // 2
        return cls.from_pair_bits(n, make_rng(seed).integers(0, 2, size=m))

    # -- queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    def beats(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def out_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def in_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=0)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhood of every vertex as a bitmask."""
        from .graph import _bitmasks

        return _bitmasks(self._adj)

    def pair_bits(self) -> np.ndarray:
        iu, ju = np.triu_indices(self.n, 1)
        return self._adj[iu, ju]

    def induced(self, vertices: Sequence[int]) -> "Tournament":
        """Sub-tournament on ``vertices``, relabelled 0.. in the given order."""
        idx = np.asarray(vertices, dtype=int)
        return Tournament(self._adj[np.ix_(idx, idx)])

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        """Isomorphic copy in which old vertex v becomes ``perm[v]``."""
        p = np.asarray(perm, dtype=int)
        a = np.zeros_like(self._adj)
        a[np.ix_(p, p)] = self._adj
        return Tournament(a)

    def arcs(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self._adj)
        return list(zip(us.tolist(), vs.tolist()))

    def __eq__(self, other):
        return isinstance(other, Tournament) and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"Tournament(n={self.n})"


@dataclass(frozen=True)
class Ordering:
    """A permutation: ``perm[i]`` is the vertex placed at position i."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(v) for v in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(len(perm))):
            raise DomainError(f"not a permutation of 0..{len(perm) - 1}: {perm}")

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))

    @cached_property
    def position(self) -> np.ndarray:
        pos = np.empty(len(self.perm), dtype=int)
        pos[list(self.perm)] = np.arange(len(self.perm))
        pos.setflags(write=False)
        return pos

    def reversed(self) -> "Ordering":
        return Ordering(self.perm[::-1])

    def __len__(self):
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)

    def __getitem__(self, i):
        return self.perm[i]


def as_ordering(pi) -> Ordering:
    return pi if isinstance(pi, Ordering) else Ordering(tuple(pi))


def _check_sizes(g: Tournament, pi: Ordering):
    if len(pi) != g.n:
        raise SizeMismatchError(f"ordering has {len(pi)} entries, tournament has {g.n} vertices")


def forward_subgraph(g: Tournament, pi) -> SimpleGraph:
    """G_pi: the undirected graph of edges oriented forwards along ``pi``."""
    pi = as_ordering(pi)
    _check_sizes(g, pi)
    pos = pi.position
    fwd = g.adjacency & (pos[:, None] < pos[None, :])
    return SimpleGraph(fwd | fwd.T)


def backward_subgraph(g: Tournament, pi) -> SimpleGraph:
    return forward_subgraph(g, as_ordering(pi).reversed())


def is_transitive(g: Tournament) -> tuple[bool, Ordering | None]:
    """Transitivity test with the topological order as witness.

    A tournament is transitive iff its out-degrees are exactly 0..n-1, and
    then sorting by decreasing out-degree gives the unique topological order.
    """
    out = g.out_degrees()
    if sorted(out.tolist()) != list(range(g.n)):
        return False, None
    return True, Ordering(tuple(np.argsort(-out, kind="stable").tolist()))


def backward_degrees(g: Tournament, sequence: Sequence[int]) -> np.ndarray:
    """For each entry of ``sequence`` (distinct vertices, possibly a subset),
    the number of edges to other entries that point backwards along it."""
    idx = np.asarray(sequence, dtype=int)
    sub = g.adjacency[np.ix_(idx, idx)]
    back = np.tril(sub, -1)  # later entry -> earlier entry
    return back.sum(axis=0) + back.sum(axis=1)


def almost_transitive_q(g: Tournament, rho) -> int:
    """Largest number of backward edges at any vertex under ``rho``."""
    rho = as_ordering(rho)
    _check_sizes(g, rho)
    if g.n == 0:
        return 0
    return int(backward_degrees(g, rho.perm).max())


def has_directed_triangle(g: Tournament, vertices: Iterable[int]) -> bool:
    a = g.adjacency
    for x, y, z in combinations(list(vertices), 3):
        if (a[x, y] and a[y, z] and a[z, x]) or (a[y, x] and a[z, y] and a[x, z]):
            return True
    return False


# ---------------------------------------------------------------------------
# TRN1 text format


def format_trn1(g: Tournament) -> str:
    """Serialise: header ``TRN1 <n>``, then row i lists bits for pairs
    (i, i+1), (i, i+2), ... with 1 meaning i -> j."""
    lines = [f"TRN1 {g.n}"]
    a = g.adjacency
    for i in range(g.n - 1):
        lines.append("".join("1" if a[i, j] else "0" for j in range(i + 1, g.n)))
    return "\n".join(lines) + "\n"


def parse_trn1(text: str) -> Tournament:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty TRN1 document")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "TRN1" or not head[1].isdigit():
        raise FormatError(f"bad TRN1 header: {lines[0]!r}")
    n = int(head[1])
    rows = lines[1:]
    if len(rows) != max(n - 1, 0):
        raise FormatError(f"expected {max(n - 1, 0)} rows after header, got {len(rows)}")
    bits = []
    for i, row in enumerate(rows):
        row = row.strip()
        if len(row) != n - 1 - i or set(row) - {"0", "1"}:
            raise FormatError(f"row {i} must be {n - 1 - i} characters over {{0,1}}: {row!r}")
        bits.extend(ch == "1" for ch in row)
    return Tournament.from_pair_bits(n, bits)


def write_trn1(g: Tournament, path) -> None:
    Path(path).write_text(format_trn1(g))


def read_trn1(path) -> Tournament:
    try:
        return parse_trn1(Path(path).read_text())
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc
