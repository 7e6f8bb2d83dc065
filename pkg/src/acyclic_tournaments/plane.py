"""Projective-plane tournaments and their quasirandom properties.

Points of the plane of prime order p are the 1-dimensional subspaces of
F_p^3, each written as the triple whose first nonzero coordinate is 1; lines
are the same triples read as normal vectors, and a point lies on a line when
the dot product vanishes mod p.  With t = p + 1 there are t^2 - t + 1 points
and lines, t points on every line and t lines through every point.

A plane tournament puts k vertices in every point's bucket (vertex v lies in
bucket v // k) and orients every edge between two buckets by an independent
uniform ordering of the kt vertices on the line through both points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, FormatError
from .rng import make_rng
from .tournament import Tournament, as_ordering, forward_subgraph


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _normalised_triples(p: int) -> list[tuple[int, int, int]]:
    out = []
    for x in product(range(p), repeat=3):
        nz = next((c for c in x if c), 0)
        if nz == 1:
            out.append(x)
    return sorted(out)


@dataclass(frozen=True, eq=False)
class ProjectivePlane:
    """Point-line incidence structure; ``lines[j]`` lists the points on line j."""

    t: int
    lines: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return self.t - 1

    @property
    def size(self) -> int:
        return self.t * self.t - self.t + 1

    @cached_property
    def incidence(self) -> np.ndarray:
        """Points x lines 0/1 matrix L."""
        L = np.zeros((self.size, self.size), dtype=np.int64)
        for j, pts in enumerate(self.lines):
            L[list(pts), j] = 1
        L.setflags(write=False)
        return L

    def line_through(self, a: int, b: int) -> int:
        both = np.flatnonzero(self.incidence[a] & self.incidence[b])
        if len(both) != 1:
            raise DomainError(f"points {a}, {b} do not determine a unique line")
        return int(both[0])

    def check_axioms(self) -> None:
        """Raise unless every line has t points, every point is on t lines,
        and every two points share exactly one line."""
        L = self.incidence
        if L.shape != (self.size, self.size) or len(self.lines) != self.size:
            raise DomainError("wrong number of points or lines")
        if not (L.sum(axis=0) == self.t).all():
            raise DomainError("some line does not have t points")
        gram = L @ L.T  # gram[a, b] = number of lines through both a and b
        expected = np.ones_like(gram) + (self.t - 1) * np.eye(self.size, dtype=gram.dtype)
        if not np.array_equal(gram, expected):
            raise DomainError("point/line incidences violate the plane axioms")


def build_projective_plane(p: int) -> ProjectivePlane:
    """The plane of prime order p over the p-element field."""
    if not is_prime(p):
        raise DomainError(f"plane order must be prime, got {p}")
    triples = np.array(_normalised_triples(p))
    dots = (triples @ triples.T) % p  # rows: points, columns: lines
    lines = tuple(tuple(np.flatnonzero(dots[:, j] == 0).tolist()) for j in range(len(triples)))
    plane = ProjectivePlane(p + 1, lines)
    plane.check_axioms()
    return plane


def format_pp1(plane: ProjectivePlane) -> str:
    rows = [f"PP1 {plane.t}"] + [" ".join(map(str, pts)) for pts in plane.lines]
    return "\n".join(rows) + "\n"


def parse_pp1(text: str) -> ProjectivePlane:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty PP1 document")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "PP1" or not head[1].isdigit():
        raise FormatError(f"bad PP1 header: {lines[0]!r}")
    t = int(head[1])
    size = t * t - t + 1
    if len(lines) - 1 != size:
        raise FormatError(f"expected {size} lines, got {len(lines) - 1}")
    try:
        rows = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if any(len(r) != t or min(r) < 0 or max(r) >= size for r in rows):
        raise FormatError(f"every line must list {t} point indices in 0..{size - 1}")
    plane = ProjectivePlane(t, rows)
    try:
        plane.check_axioms()
    except DomainError as exc:
        raise FormatError(str(exc)) from None
    return plane


def write_pp1(plane: ProjectivePlane, path) -> None:
    Path(path).write_text(format_pp1(plane))


def read_pp1(path) -> ProjectivePlane:
    try:
        return parse_pp1(Path(path).read_text())
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# tournaments


@dataclass(frozen=True)
class PlaneTournamentSpec:
    plane: ProjectivePlane
    k: int
    intra_bucket_policy: str = "lex-forward"
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("bucket size k must be positive")
        if self.intra_bucket_policy not in ("lex-forward", "random"):
            raise DomainError(f"unknown intra-bucket policy {self.intra_bucket_policy!r}")


@dataclass(frozen=True, eq=False)
class PlaneTournament:
    tournament: Tournament
    spec: PlaneTournamentSpec
    line_orders: tuple[tuple[int, ...], ...]

    @property
    def plane(self) -> ProjectivePlane:
        return self.spec.plane

    @property
    def k(self) -> int:
        return self.spec.k

    def bucket(self, v: int) -> int:
        return v // self.spec.k

    def line_vertices(self, j: int) -> np.ndarray:
        pts = np.asarray(self.plane.lines[j])
        return (pts[:, None] * self.k + np.arange(self.k)).ravel()


def build_plane_tournament(spec: PlaneTournamentSpec) -> PlaneTournament:
    """Orient every inter-bucket edge by the random ordering of its line.

    Line j's ordering is the j-th ``permutation`` draw on the seeded stream;
    a random intra-bucket policy then draws one coin per in-bucket pair.
    """
    plane, k = spec.plane, spec.k
    n = plane.size * k
    bucket = np.arange(n) // k
    rng = make_rng(spec.seed)
    adj = np.zeros((n, n), dtype=bool)
    assigned = np.zeros((n, n), dtype=np.int64)
    orders = []
    for j, pts in enumerate(plane.lines):
        verts = (np.asarray(pts)[:, None] * k + np.arange(k)).ravel()
        order = verts[rng.permutation(len(verts))]
        orders.append(tuple(order.tolist()))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(len(order))
        r = rank[verts]
        cross = bucket[verts][:, None] != bucket[verts][None, :]
        block = np.ix_(verts, verts)
        adj[block] |= cross & (r[:, None] < r[None, :])
        assigned[block] += cross
    same = bucket[:, None] == bucket[None, :]
    iu, ju = np.triu_indices(n, 1)
    inside = same[iu, ju]
    iu, ju = iu[inside], ju[inside]
    if spec.intra_bucket_policy == "lex-forward":
        forward = np.ones(len(iu), dtype=bool)
    else:
        forward = rng.integers(0, 2, size=len(iu)).astype(bool)
    adj[iu[forward], ju[forward]] = True
    adj[ju[~forward], iu[~forward]] = True
    assigned[iu, ju] += 1
    assigned[ju, iu] += 1
    off = ~np.eye(n, dtype=bool)
    if not (assigned[off] == 1).all():
        raise AssertionError("some edge was oriented more or less than once")
    return PlaneTournament(Tournament(adj), spec, tuple(orders))


def build_grid_tournament(q: int) -> Tournament:
    """On 0..q^2-1: i -> j for i < j, except j -> i when q divides j - i."""
    if q < 1:
        raise DomainError("q must be positive")
    n = q * q
    i = np.arange(n)
    diff = i[None, :] - i[:, None]
    forward = diff > 0
    flip = (diff % q == 0) & (diff != 0)
    return Tournament(forward ^ flip)


# ---------------------------------------------------------------------------
# spectral checks


@dataclass(frozen=True, eq=False)
class IncidenceLift:
    """Bipartite graph between tournament vertices and lines: vertex v is
    joined to every line through its bucket's point.

    ``matrix`` has one row per vertex in bucket-major order, i.e. the
    Kronecker product of the incidence matrix with a k x 1 all-ones column
    (a row permutation of K (x) L, which has the same singular values).
    """

    plane: ProjectivePlane
    k: int

    @classmethod
    def of(cls, pt: PlaneTournament) -> "IncidenceLift":
        return cls(pt.plane, pt.k)

    @cached_property
    def matrix(self) -> np.ndarray:
        M = np.kron(self.plane.incidence, np.ones((self.k, 1), dtype=np.int64))
        M.setflags(write=False)
        return M

    @property
    def left_degree(self) -> int:
        return self.plane.t

    @property
    def right_degree(self) -> int:
        return self.k * self.plane.t

    @property
    def second_singular_value(self) -> float:
        return float(np.sqrt(self.k * (self.plane.t - 1)))


def closed_form_singular_values(t: int, k: int) -> np.ndarray:
    """sqrt(k)*t once, then sqrt(k(t-1)) with multiplicity t^2 - t."""
    return np.array([np.sqrt(k) * t] + [np.sqrt(k * (t - 1))] * (t * t - t))


def incidence_singular_values(lift: IncidenceLift) -> np.ndarray:
    """Singular values of the lift's matrix, descending, from the symmetric
    eigenproblem of M^T M (a (t^2-t+1)-square matrix whatever k is)."""
    M = lift.matrix.astype(float)
    gram = M.T @ M
    eig = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(eig, 0.0, None))[::-1]


class MixingCheck(NamedTuple):
    edges: int
    main_term: float
    discrepancy: float
    bound: float
    holds: bool


def check_expander_mixing(lift: IncidenceLift, X: Iterable[int], Y: Iterable[int]) -> MixingCheck:
    """|e(X,Y) - sqrt(ab/(|A||B|))|X||Y|| <= sigma_2 sqrt(|X||Y|).

    a = t and b = kt are the vertex-side and line-side degrees; sigma_2 is
    the closed-form second singular value sqrt(k(t-1)).
    """
    M = lift.matrix
    xs = np.fromiter(set(X), dtype=np.int64)
    ys = np.fromiter(set(Y), dtype=np.int64)
    n_a, n_b = M.shape
    if (xs.size and (xs.min() < 0 or xs.max() >= n_a)) or (ys.size and (ys.min() < 0 or ys.max() >= n_b)):
        raise DomainError("X must index vertices and Y must index lines")
    e = int(M[np.ix_(xs, ys)].sum()) if xs.size and ys.size else 0
    a, b = lift.left_degree, lift.right_degree
    main = np.sqrt(a * b) / np.sqrt(n_a * n_b) * xs.size * ys.size
    disc = abs(e - main)
    bound = lift.second_singular_value * np.sqrt(xs.size * ys.size)
    return MixingCheck(e, float(main), float(disc), float(bound), bool(disc <= bound * (1 + 1e-12) + 1e-9))


# ---------------------------------------------------------------------------
# coverage and independent sets


def line_hits(pt: PlaneTournament, X: Iterable[int]) -> np.ndarray:
    """|line ∩ X| for every line."""
    xs = np.fromiter(set(X), dtype=np.int64)
    per_point = np.bincount(xs // pt.k, minlength=pt.plane.size)
    return per_point @ pt.plane.incidence


def line_coverage_deficit(pt: PlaneTournament, X: Iterable[int]) -> int:
    """Number of lines containing fewer than |X|/(2t) vertices of X."""
    X = set(X)
    if not X:
        raise DomainError("X must be nonempty")
    hits = line_hits(pt, X)
    return int((2 * pt.plane.t * hits < len(X)).sum())


class IndependentSetAudit(NamedTuple):
    alpha_found: int
    threshold: float
    witness: tuple[int, ...]
    line: int


def independent_set_lower_audit(pt: PlaneTournament, pi, X: Iterable[int]) -> IndependentSetAudit:
    """Look for a large independent set of G_pi[X] one line at a time.

    On a line, edges between different buckets follow the line's ordering,
    so vertices from distinct buckets form an independent set of G_pi exactly
    when pi lists them in decreasing line order.  For each line holding at
    least |X|/(2t) vertices of X, the strip scanner is run on the line's
    vertices (taken in pi order, line ranks reversed) with no length target;
    the longest sequence over all lines and phases is returned and re-checked
    against G_pi.
    """
    from .subsequence import BucketedInterval, longest_scan

    pi = as_ordering(pi)
    X = sorted(set(int(x) for x in X))
    if not X:
        raise DomainError("X must be nonempty")
    t = pt.plane.t
    threshold = len(X) / (16 * t ** 3)
    pos = pi.position
    in_x = np.zeros(pt.tournament.n, dtype=bool)
    in_x[X] = True
    hits = line_hits(pt, X)
    best: tuple[int, ...] = (X[0],)
    best_line = -1
    for j, order in enumerate(pt.line_orders):
        if 2 * t * hits[j] < len(X):
            continue
        verts = np.asarray([v for v in order if in_x[v]])
        line_rank = np.arange(len(verts))  # order is the line's own ordering
        by_pi = np.argsort(pos[verts], kind="stable")
        seq_verts = verts[by_pi]
        m = len(seq_verts)
        sigma = (m - line_rank[by_pi]).tolist()  # reversed ranks, values 1..m
        layout = BucketedInterval.from_buckets([pt.bucket(int(v)) for v in seq_verts], pt.k)
        cols = longest_scan(sigma, layout)
        if len(cols) > len(best):
            best = tuple(int(seq_verts[c - 1]) for c in cols)
            best_line = j
    graph = forward_subgraph(pt.tournament, pi)
    if not graph.is_independent(best):
        raise AssertionError("audit produced a set that is not independent")
    return IndependentSetAudit(len(best), threshold, best, best_line)
