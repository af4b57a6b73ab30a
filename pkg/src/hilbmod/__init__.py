"""Numerical modified Hilbert transform on a bounded interval (0, T)."""

from .analysis import (
    METHODS,
    ComparisonReport,
    Resolutions,
    compact_remainder,
    convergence_table,
    cross_validate,
    invert,
    positivity_check,
    run_method,
)
from .core import (
    CorpusCase,
    Grid1D,
    GridKind,
    Horizon,
    InvalidArgument,
    SampledSignal,
    error_norms,
    l2_inner,
    make_grid,
)
from .extensions import eval_bar, eval_even_tilde, eval_tilde, eval_tilde_derivative
from .quadrature import (
    PVConfig,
    csc_series,
    ht_alternative,
    ht_cot_periodic,
    ht_csc,
    ht_weakly_singular,
    pv_integrate,
)
from .spectral import (
    SineSeries,
    circular_hilbert,
    ht_series,
    ht_spectral,
    ht_via_circular,
    series_eval,
    sine_coefficients,
)

__version__ = "0.1.0"
