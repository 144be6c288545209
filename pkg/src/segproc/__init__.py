"""Diminishing segment process: exact density recursion, samplers, and limit-law checks."""

from .core import (
    DegenerateRngError,
    GemVector,
    ProcessState,
    Segment,
    ThinnedState,
    run_direct,
    sample_center_series,
    sample_gem,
    sample_max_uniform,
    simulate_direct,
    step_direct,
    step_thinned,
    to_poisson_dirichlet,
)
from .density import density_table, expectation_s, next_coefficient_row
from .rng import RngStream

__version__ = "0.1.0"
