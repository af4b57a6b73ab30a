"""Inversion, positivity, the compact remainder and cross-method checks."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import quadrature, spectral
from .core import (
    DEFAULT_MARGIN,
    CorpusCase,
    Evaluable,
    Grid1D,
    GridKind,
    HorizonLike,
    InvalidArgument,
    SampledSignal,
    as_horizon,
    error_norms,
    l2_inner,
    make_grid,
)
from .extensions import eval_bar, eval_even_tilde

METHODS = ("spectral", "csc", "cot", "sz", "alt", "circular")


@dataclass(frozen=True)
class Resolutions:
    """Discretisation parameters shared by every method."""

    N: int = spectral.DEFAULT_N
    n: int = quadrature.DEFAULT_PV_N
    n_cot: int = quadrature.DEFAULT_COT_N
    n_sz: int = quadrature.DEFAULT_SZ_N
    M: int = spectral.DEFAULT_M

    def scaled(self, factor: int) -> "Resolutions":
        return Resolutions(*(factor * v for v in asdict(self).values()))

    def for_method(self, method: str) -> int:
        return {
            "spectral": self.N,
            "csc": self.n,
            "alt": self.n,
            "cot": self.n_cot,
            "sz": self.n_sz,
            "circular": self.M,
        }[method]


def applicable(method: str, case: CorpusCase) -> bool:
    if method not in METHODS:
        raise InvalidArgument(f"unknown method {method!r}")
    return method != "sz" or case.df is not None


def run_method(method: str, case: CorpusCase, grid: Grid1D, resolution: Optional[int] = None) -> np.ndarray:
    """Evaluate the modified Hilbert transform of ``case`` on ``grid`` with one method.

    ``resolution`` overrides the method's default (N, n or M).
    """
    if not applicable(method, case):
        raise InvalidArgument(f"method {method!r} does not apply to case {case.name!r}")
    res = resolution or Resolutions().for_method(method)
    f, h, t = case.f, case.horizon, grid.nodes
    if method == "spectral":
        return spectral.ht_series(f, h, t, res)
    if method == "circular":
        return spectral.ht_via_circular(f, h, res, grid).values
    if method == "csc":
        return quadrature.ht_csc(f, h, t, quadrature.PVConfig(res))
    if method == "cot":
        return quadrature.ht_cot_periodic(f, h, t, quadrature.PVConfig(res))
    if method == "alt":
        return quadrature.ht_alternative(f, h, t, quadrature.PVConfig(res))
    return quadrature.ht_weakly_singular(f, case.df, h, t, res)


def invert(g: Evaluable, horizon: HorizonLike, M: int = spectral.DEFAULT_M, out_grid: Optional[Grid1D] = None) -> SampledSignal:
    """Recover ``phi`` from ``g = H_T phi`` on (0, T).

    ``g`` is continued with the even, 2T-antiperiodic reflection, which
    coincides with minus the Hilbert transform of the periodic reflection
    of ``phi``. One more periodic Hilbert transform gives back that odd
    reflection, whose mean is zero.
    """
    horizon = as_horizon(horizon)
    if M % 2 or M < 64:
        raise InvalidArgument(f"M must be even and >= 64, got {M}")
    if out_grid is None:
        out_grid = make_grid(horizon, 256, GridKind.GAUSS_LEGENDRE)
    values = spectral.hilbert_of_extension(g, horizon, M, out_grid.nodes, eval_even_tilde)
    return SampledSignal(out_grid, values, horizon)


def positivity_check(phi: Evaluable, horizon: HorizonLike, N: int, grid: Grid1D) -> float:
    """``<phi, H_T phi>`` on ``grid`` with the transform taken from an ``N``-term series."""
    horizon = as_horizon(horizon)
    series = spectral.sine_coefficients(phi, horizon, N)
    a = SampledSignal.from_function(phi, grid, horizon)
    b = SampledSignal(grid, spectral.ht_spectral(series, grid.nodes), horizon)
    return l2_inner(a, b)


def hilbert_of_bar(phi: Evaluable, horizon: HorizonLike, t, cfg: quadrature.PVConfig = quadrature.PVConfig()):
    """Hilbert transform on the real line of the compactly supported reflection."""
    horizon = as_horizon(horizon)
    T = horizon.T

    def one(x):
        f = lambda s: eval_bar(phi, horizon, s) / (x - s)
        # 4n subintervals on the 4T support keep the mesh width of the (0, T) rules
        return quadrature.pv_integrate(
            f, x, -2.0 * T, 2.0 * T, quadrature.PVConfig(4 * cfg.n), (-T, 0.0, T)
        ) / np.pi

    return quadrature._per_point(one, t)


def compact_remainder(
    phi: Evaluable,
    horizon: HorizonLike,
    t,
    cfg: quadrature.PVConfig = quadrature.PVConfig(),
    route: str = "csc",
    M: int = spectral.DEFAULT_M,
):
    """``B phi(t) = H_T phi(t) + H phi_bar(t)``, the part of the modified
    transform not explained by the compact reflection.

    ``route`` picks how ``H_T phi`` is computed: ``"csc"`` (principal
    value quadrature) or ``"circular"`` (FFT of the periodic reflection).
    """
    horizon = as_horizon(horizon)
    t = np.asarray(t, dtype=float)
    if route == "csc":
        ht = quadrature.ht_csc(phi, horizon, t, cfg)
    elif route == "circular":
        grid = Grid1D(np.atleast_1d(t), None, GridKind.UNIFORM_INTERIOR)
        ht = spectral.ht_via_circular(phi, horizon, M, grid).values
        ht = ht.reshape(t.shape) if t.ndim else float(ht[0])
    else:
        raise InvalidArgument(f"unknown route {route!r}")
    return ht + hilbert_of_bar(phi, horizon, t, cfg)


@dataclass
class ComparisonReport:
    case: str
    methods: List[str]
    resolution: Dict[str, int]
    errors: Dict[str, Dict[str, float]]
    deviations: np.ndarray
    margin: float = DEFAULT_MARGIN
    values: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    def max_deviation(self) -> float:
        return float(self.deviations.max()) if self.deviations.size else 0.0

    def max_error(self) -> float:
        return max((e["linf_interior"] for e in self.errors.values()), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_deviation() <= tol and self.max_error() <= tol

    def pairwise(self) -> Dict[str, float]:
        out = {}
        for i, a in enumerate(self.methods):
            for j in range(i + 1, len(self.methods)):
                out[f"{a}-{self.methods[j]}"] = float(self.deviations[i, j])
        return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HILBMOD_THREADS", "1")))
    except ValueError:
        return 1


def cross_validate(
    case: CorpusCase,
    out_grid: Optional[Grid1D] = None,
    resolutions: Resolutions = Resolutions(),
    methods: Optional[Sequence[str]] = None,
    margin: float = DEFAULT_MARGIN,
) -> ComparisonReport:
    """Run every applicable method on ``case`` and compare them.

    Deviations are interior sup norms (nodes within ``[margin T, (1-margin) T]``);
    errors against ``case.exact_ht`` are reported when it is known.
    """
    if out_grid is None:
        out_grid = make_grid(case.horizon, 200, GridKind.UNIFORM_INTERIOR)
    methods = [m for m in (methods or METHODS) if applicable(m, case)]
    res = {m: resolutions.for_method(m) for m in methods}
    with ThreadPoolExecutor(_threads()) as pool:
        futures = {m: pool.submit(run_method, m, case, out_grid, res[m]) for m in methods}
        values = {m: futures[m].result() for m in methods}

    T = case.horizon.T
    t = out_grid.nodes
    inside = (t >= margin * T) & (t <= (1.0 - margin) * T)
    dev = np.zeros((len(methods), len(methods)))
    for i, a in enumerate(methods):
        for j in range(i + 1, len(methods)):
            d = np.abs(values[a] - values[methods[j]])[inside]
            dev[i, j] = dev[j, i] = d.max() if d.size else 0.0

    errors = {}
    if case.exact_ht is not None:
        for m in methods:
            l2, linf = error_norms(SampledSignal(out_grid, values[m], case.horizon), case.exact_ht, margin)
            errors[m] = {"l2": l2, "linf_interior": linf}
    return ComparisonReport(case.name, methods, res, errors, dev, margin, values)


def convergence_table(
    case: CorpusCase,
    method: str,
    resolutions: Sequence[int],
    out_grid: Optional[Grid1D] = None,
    margin: float = DEFAULT_MARGIN,
):
    """Errors of ``method`` against the closed form for each resolution.

    Returns
    -------
    list of (resolution, l2_error, linf_interior_error)
    """
    if case.exact_ht is None:
        raise InvalidArgument(f"case {case.name!r} has no closed-form transform")
    if out_grid is None:
        out_grid = make_grid(case.horizon, 200, GridKind.UNIFORM_INTERIOR)
    rows = []
    for r in sorted(resolutions):
        values = run_method(method, case, out_grid, r)
        l2, linf = error_norms(SampledSignal(out_grid, values, case.horizon), case.exact_ht, margin)
        rows.append((int(r), l2, linf))
    return rows
