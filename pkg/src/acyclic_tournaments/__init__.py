"""Acyclic subgraphs of tournaments with large chromatic number: exact
small-scale oracles, a structure finder for almost-transitive pieces, and
quasirandom constructions with checkable spectral properties."""

from .counting import count_transitive_subtournaments, estimate_transitive_subtournaments, transitive_subsets
from .errors import DomainError, FormatError, ProcedureExhausted, SizeLimitError, SizeMismatchError
from .experiments import ac_number, g_of_k_exhaustive, greedy_colour_by_mis
from .graph import (
    SimpleGraph,
    chromatic_bounds,
    chromatic_number,
    exact_colouring,
    independence_number,
    maximum_clique,
    maximum_independent_set,
)
from .orderings import (
    BlockedOrderingSpec,
    alpha_distribution_sample,
    best_ordering_exhaustive,
    blocked_ordering,
    random_ordering,
    search_low_alpha_ordering,
)
from .pipeline import acyclic_chromatic_pipeline, certify, verify_certificate
from .plane import (
    IncidenceLift,
    PlaneTournamentSpec,
    build_grid_tournament,
    build_plane_tournament,
    build_projective_plane,
    check_expander_mixing,
    incidence_singular_values,
    independent_set_lower_audit,
    line_coverage_deficit,
)
from .structure import (
    ExtensionHypergraph,
    balanced_vertex,
    find_almost_transitive,
    find_almost_transitive_iterated,
    min_degree_peel,
)
from .subsequence import BucketedInterval, StripMatrix, failure_rate_experiment, find_bucketed_increasing, scan_phase
from .tournament import (
    Ordering,
    Tournament,
    almost_transitive_q,
    backward_subgraph,
    forward_subgraph,
    is_transitive,
    parse_trn1,
    format_trn1,
)

__version__ = "0.1.0"
