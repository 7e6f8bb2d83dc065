"""Seeded randomness.

Every random choice in the package is drawn from numpy's PCG64 bit generator
(``numpy.random.PCG64``), whose output stream for a given integer seed is fixed
and platform independent.  Repeated trials derive their seeds as
``seed ^ trial_index`` so that any trial can be replayed on its own.
"""

import numpy as np

from .errors import DomainError


def make_rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def trial_seed(seed: int, trial: int) -> int:
    return seed ^ trial
