"""Command-line front end.  Every subcommand prints (or writes) one CSV table
whose first line is a ``#`` comment recording the full configuration.

Exit codes: 0 success, 1 usage or invalid parameters, 2 I/O or unreadable
input, 3 size or feasibility refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from math import ceil
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, FormatError, ProcedureExhausted, SizeLimitError
from .experiments import ac_number, g_of_k_exhaustive, gk_rows
from .orderings import alpha_distribution_sample
from .pipeline import acyclic_chromatic_pipeline
from .plane import (
    IncidenceLift,
    PlaneTournamentSpec,
    build_grid_tournament,
    build_plane_tournament,
    build_projective_plane,
    check_expander_mixing,
    closed_form_singular_values,
    incidence_singular_values,
    line_coverage_deficit,
    write_pp1,
)
from .rng import make_rng, trial_seed
from .structure import STEP_LOG_COLUMNS, find_almost_transitive
from .subsequence import FAILURE_RATE_COLUMNS, failure_rate_experiment
from .tournament import Tournament, Ordering, almost_transitive_q, read_trn1, write_trn1

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_SIZE = 0, 1, 2, 3

# options that only say where to put things; kept out of the provenance line
_PLUMBING = {"command", "handler", "out", "trn_out", "pp_out"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Table:
    def __init__(self, columns: Sequence[str], rows: Sequence[Sequence]):
        self.columns = tuple(columns)
        self.rows = [tuple(r) for r in rows]


def _cell(x):
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, np.integer):
        return int(x)
    return x


def render_csv(config: dict, table: Table) -> str:
    buf = io.StringIO()
    items = " ".join(f"{k}={config[k]}" for k in sorted(config) if k not in _PLUMBING)
    buf.write(f"# acyclic-tournaments {config['command']} {items}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    w.writerows([[_cell(c) for c in r] for r in table.rows])
    return buf.getvalue()


def _tournament(args) -> Tournament:
    if args.input is not None:
        return read_trn1(args.input)
    if args.n is None:
        raise UsageError("give --n for a random tournament or --input for a TRN1 file")
    if args.n < 1:
        raise DomainError("--n must be positive")
    return Tournament.random(args.n, args.seed)


# ---------------------------------------------------------------------------
# subcommands


def cmd_pipeline(args) -> Table:
    g = _tournament(args)
    res = acyclic_chromatic_pipeline(g, args.seed)
    q = "" if res.structure is None else res.structure.q
    cols = ("n", "k", "copies", "copies_exact", "branch", "chosen", "chi_lower",
            "clique_size", "alpha", "structure_q", "blocks")
    return Table(cols, [(g.n, res.k, res.copies, res.copies_exact, res.branch, res.chosen,
                         res.chi_lower, len(res.certificate.clique), res.certificate.alpha, q,
                         "" if res.blocks is None else res.blocks)])


def cmd_structure(args) -> Table:
    g = _tournament(args)
    k = args.k if args.k is not None else ceil(g.n ** (4 / 9))
    res = find_almost_transitive(g, k)
    if args.summary:
        cols = ("n", "k", "steps", "vertices", "k_prime", "copies", "q", "q_bound")
        return Table(cols, [(g.n, k, res.steps, len(res.vertices), res.k_prime, res.copies,
                             res.q, res.q_bound)])
    return Table(STEP_LOG_COLUMNS, res.step_log)


def cmd_plane(args) -> Table:
    plane = build_projective_plane(args.p)
    pt = build_plane_tournament(PlaneTournamentSpec(plane, args.k, args.policy, args.seed))
    if args.trn_out:
        write_trn1(pt.tournament, args.trn_out)
    if args.pp_out:
        write_pp1(plane, args.pp_out)
    g = pt.tournament
    cols = ("p", "t", "k", "n", "points", "arcs", "cyclic_triangles")
    out = g.out_degrees().astype(np.int64)
    triangles = g.n * (g.n - 1) * (g.n - 2) // 6 - int((out * (out - 1) // 2).sum())
    return Table(cols, [(args.p, plane.t, args.k, g.n, plane.size, g.n * (g.n - 1) // 2, triangles)])


def cmd_grid(args) -> Table:
    g = build_grid_tournament(args.q)
    if args.trn_out:
        write_trn1(g, args.trn_out)
    q = almost_transitive_q(g, Ordering.identity(g.n))
    backward = int(np.tril(g.adjacency, -1).sum())
    return Table(("q", "n", "backward_edges_identity", "max_backward_degree_identity"),
                 [(args.q, g.n, backward, q)])


def cmd_spectrum(args) -> Table:
    lift = IncidenceLift(build_projective_plane(args.p), args.k)
    got = incidence_singular_values(lift)
    want = closed_form_singular_values(lift.plane.t, args.k)
    return Table(("index", "singular_value", "closed_form", "relative_error"),
                 [(i, a, b, abs(a - b) / b) for i, (a, b) in enumerate(zip(got, want))])


def cmd_mixing(args) -> Table:
    lift = IncidenceLift(build_projective_plane(args.p), args.k)
    n_a, n_b = lift.matrix.shape
    violations, worst = 0, 0.0
    for t in range(args.trials):
        rng = make_rng(trial_seed(args.seed, t))
        xs = np.flatnonzero(rng.random(n_a) < rng.random())
        ys = np.flatnonzero(rng.random(n_b) < rng.random())
        chk = check_expander_mixing(lift, xs, ys)
        violations += not chk.holds
        if chk.bound > 0:
            worst = max(worst, chk.discrepancy / chk.bound)
    return Table(("p", "k", "trials", "violations", "max_discrepancy_ratio"),
                 [(args.p, args.k, args.trials, violations, worst)])


def cmd_coverage(args) -> Table:
    plane = build_projective_plane(args.p)
    pt = build_plane_tournament(PlaneTournamentSpec(plane, args.k, "lex-forward", args.seed))
    n, t = pt.tournament.n, plane.t
    size = args.size if args.size is not None else min(n, 9 * args.k * t)
    if not 1 <= size <= n:
        raise DomainError(f"--size must lie in 1..{n}")
    deficits = [
        line_coverage_deficit(pt, make_rng(trial_seed(args.seed, i)).choice(n, size, replace=False))
        for i in range(args.trials)
    ]
    applies = size >= 9 * args.k * t
    cols = ("p", "t", "k", "n", "size", "bound_applies", "trials", "max_deficit", "mean_deficit", "bound")
    return Table(cols, [(args.p, t, args.k, n, size, applies, args.trials, max(deficits),
                         float(np.mean(deficits)), t * t / 2 if applies else "")])


def cmd_subseq(args) -> Table:
    res = failure_rate_experiment(args.k, args.m, args.trials, args.seed)
    cols = FAILURE_RATE_COLUMNS + ("stderr", "within_bound")
    return Table(cols, [tuple(res) + (res.stderr, res.rate <= res.bound + 3 * res.stderr)])


def cmd_gk(args) -> Table:
    res = g_of_k_exhaustive(args.k, sampling=args.sampling, samples=args.samples, seed=args.seed)
    cols = ("k", "n", "verdict", "exhaustive", "counterexample_pair_bits", "g_k", "label")
    return Table(cols, gk_rows(res))


def cmd_ac(args) -> Table:
    g = build_grid_tournament(args.grid) if args.grid is not None else _tournament(args)
    res = ac_number(g, args.seed)
    return Table(("n", "exact", "value", "lower", "upper"),
                 [(g.n, res.exact, "" if res.value is None else res.value, res.lower, res.upper)])


def cmd_alpha_dist(args) -> Table:
    g = _tournament(args)
    hist = alpha_distribution_sample(g, args.trials, args.seed)
    return Table(("value", "count"), sorted(hist.items()))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="acyclic-tournaments", description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="write the CSV here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, help_: str, source=False, seed=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        if source:
            p.add_argument("--n", type=int, help="size of a random tournament")
            p.add_argument("--input", type=Path, help="TRN1 file to read instead")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        return p

    add("pipeline", cmd_pipeline, "certified acyclic subgraph of large chromatic number", source=True)
    p = add("structure", cmd_structure, "almost-transitive subtournament finder", source=True)
    p.add_argument("--k", type=int)
    p.add_argument("--summary", action="store_true", help="one summary row instead of the step log")
    p = add("plane", cmd_plane, "projective-plane tournament")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--policy", choices=("lex-forward", "random"), default="lex-forward")
    p.add_argument("--trn-out", type=Path)
    p.add_argument("--pp-out", type=Path)
    p = add("grid", cmd_grid, "grid tournament", seed=False)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trn-out", type=Path)
    p = add("spectrum", cmd_spectrum, "singular values of the plane incidence lift", seed=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("mixing", cmd_mixing, "random expander-mixing audits")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p = add("coverage", cmd_coverage, "line-coverage deficits of random vertex sets")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--size", type=int)
    p.add_argument("--trials", type=int, default=1000)
    p = add("subseq", cmd_subseq, "failure rate of the bucketed subsequence scanner")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p = add("gk", cmd_gk, "small values of g(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sampling", action="store_true")
    p.add_argument("--samples", type=int, default=200)
    p = add("ac", cmd_ac, "max over orderings of chi(G_pi)", source=True)
    p.add_argument("--grid", type=int, help="use the grid tournament with this q")
    p = add("alpha-dist", cmd_alpha_dist, "alpha(G_pi) over random orderings", source=True)
    p.add_argument("--trials", type=int, default=1000)
    return parser


def _run(argv: Sequence[str]):
    args = build_parser().parse_args(list(argv))
    for name in ("trials", "samples"):
        if getattr(args, name, 1) < 1:
            raise DomainError(f"--{name} must be >= 1")
    if getattr(args, "seed", 0) < 0:
        raise DomainError("--seed must be non-negative")
    table = args.handler(args)
    return args, render_csv(vars(args), table)


def run_experiment(argv: Sequence[str]) -> str:
    """Parse a command line and return the CSV text it produces."""
    return _run(argv)[1]


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args, text = _run(argv)
        out = args.out
        if out is None:
            sys.stdout.write(text)
        else:
            try:
                Path(out).write_text(text)
            except OSError as exc:
                raise OSError(f"cannot write {out}: {exc.strerror or exc}") from exc
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SizeLimitError, ProcedureExhausted) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except DomainError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
