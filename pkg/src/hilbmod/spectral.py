"""Quarter-wave sine series and FFT-based periodic Hilbert transforms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .core import (
    Evaluable,
    GridKind,
    Grid1D,
    Horizon,
    HorizonLike,
    InvalidArgument,
    SampledSignal,
    as_horizon,
    evaluate,
    ht_of_constant,
    make_grid,
)
from .extensions import eval_tilde

DEFAULT_N = 1024
DEFAULT_M = 16384

_PANEL_ORDER = 16
_CHUNK = 1 << 22  # matrix entries per block when synthesising series


@dataclass(frozen=True, eq=False)
class SineSeries:
    """Coefficients of ``sum_k c_k sin((pi/2 + k pi) t / T)``."""

    coeffs: np.ndarray
    horizon: Horizon

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if coeffs.ndim != 1:
            raise InvalidArgument("coefficients must be a 1-D sequence")
        if not np.all(np.isfinite(coeffs)):
            raise InvalidArgument("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "horizon", as_horizon(self.horizon))

    def __len__(self):
        return self.coeffs.size

    @property
    def frequencies(self) -> np.ndarray:
        return (np.arange(len(self)) + 0.5) * np.pi / self.horizon.T


@lru_cache(maxsize=None)
def _gauss_rule(order: int):
    return roots_legendre(order)


def composite_gauss_legendre(a: float, b: float, n_nodes: int, order: int = _PANEL_ORDER):
    """Nodes and weights of a composite Gauss-Legendre rule with about
    ``n_nodes`` points on [a, b]."""
    panels = max(1, -(-n_nodes // order))
    x, w = _gauss_rule(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


def _synthesise(coeffs, freqs, t, basis):
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    out = np.empty(flat.size)
    step = max(1, _CHUNK // max(1, coeffs.size))
    for i in range(0, flat.size, step):
        block = flat[i : i + step]
        out[i : i + step] = basis(np.outer(block, freqs)) @ coeffs
    return out.reshape(t.shape) if t.ndim else float(out[0])


def sine_coefficients(phi: Evaluable, horizon: HorizonLike, N: int, quad_nodes: int | None = None) -> SineSeries:
    """Project ``phi`` onto the first ``N`` quarter-wave sines.

    Parameters
    ----------
    phi : callable
        Vectorised function on [0, T].
    N : int
        Number of coefficients.
    quad_nodes : int, optional
        Gauss-Legendre nodes for the projection integrals, at least ``10 N``
        so the highest mode is resolved. Defaults to ``10 N``.
    """
    horizon = as_horizon(horizon)
    T = horizon.T
    if N < 1:
        raise InvalidArgument("N must be positive")
    quad_nodes = 10 * N if quad_nodes is None else quad_nodes
    if quad_nodes < 10 * N:
        raise InvalidArgument(
            f"quad_nodes={quad_nodes} under-resolves mode {N - 1}; need >= {10 * N}"
        )
    s, w = composite_gauss_legendre(0.0, T, quad_nodes)
    fw = evaluate(phi, s) * w
    freqs = (np.arange(N) + 0.5) * np.pi / T
    coeffs = np.empty(N)
    step = max(1, _CHUNK // s.size)
    for i in range(0, N, step):
        coeffs[i : i + step] = np.sin(np.outer(freqs[i : i + step], s)) @ fw
    return SineSeries(2.0 / T * coeffs, horizon)


def series_eval(series: SineSeries, t):
    """Synthesise ``sum_k c_k sin(w_k t)``."""
    return _synthesise(series.coeffs, series.frequencies, t, np.sin)


def ht_spectral(series: SineSeries, t):
    """Modified Hilbert transform of a series: ``sum_k c_k cos(w_k t)``."""
    if len(series) == 0:
        raise InvalidArgument("empty series")
    return _synthesise(series.coeffs, series.frequencies, t, np.cos)


def series_derivative(series: SineSeries) -> Evaluable:
    """Term-wise derivative of the series as an evaluable.

    An explicit fallback for supplying ``phi'`` when only a series
    representation is available. It converges slowly unless the
    coefficients decay faster than ``1/k^2``.
    """
    w = series.frequencies
    c = series.coeffs * w
    return lambda t: _synthesise(c, w, t, np.cos)


def ht_series(phi: Evaluable, horizon: HorizonLike, t, N: int = DEFAULT_N, split_constant: bool = True):
    """Evaluate the modified Hilbert transform of ``phi`` by its sine series.

    With ``split_constant`` the value ``phi(0)`` is removed first and its
    transform added back in closed form; otherwise the 1/k tail of the
    jump at ``t = 0`` limits accuracy to O(1/N).
    """
    horizon = as_horizon(horizon)
    c0 = float(evaluate(phi, 0.0)) if split_constant else 0.0
    rest = (lambda s: evaluate(phi, s) - c0) if c0 else phi
    value = ht_spectral(sine_coefficients(rest, horizon, N), t)
    if c0:
        value = value + c0 * ht_of_constant(horizon, t)
    return value


def _check_periodic(samples: SampledSignal):
    if samples.grid.kind is not GridKind.PERIODIC_UNIFORM:
        raise InvalidArgument("circular Hilbert transform needs a periodic-uniform grid")
    M = len(samples.grid)
    if M % 2:
        raise InvalidArgument(f"sample count must be even, got {M}")
    return M


def _multiplier(M: int, sign: float) -> np.ndarray:
    k = np.fft.fftfreq(M, d=1.0 / M)
    mult = -1j * sign * np.sign(k)
    mult[M // 2] = 0.0  # unpaired Nyquist mode
    return mult


def circular_hilbert(samples: SampledSignal) -> SampledSignal:
    """Hilbert transform of one period (length 4T) of a periodic signal.

    Fourier mode ``k`` is multiplied by ``-i sgn(k)``; the mean and the
    Nyquist mode are dropped.
    """
    M = _check_periodic(samples)
    spectrum = np.fft.fft(samples.values) * _multiplier(M, 1.0)
    out = np.fft.ifft(spectrum)
    scale = max(1.0, float(np.max(np.abs(samples.values))))
    if np.max(np.abs(out.imag)) > 1e-12 * scale:
        raise ArithmeticError("circular Hilbert transform produced a complex result")
    return SampledSignal(samples.grid, out.real, samples.horizon)


def _interpolate_conjugate(values, horizon: Horizon, t, sign: float):
    """Trigonometric interpolant of ``sign * H`` of periodic samples, at ``t``."""
    M = values.size
    T = horizon.T
    coeffs = np.fft.fft(values) / M * _multiplier(M, sign)
    k = np.fft.fftfreq(M, d=1.0 / M)
    keep = coeffs != 0
    coeffs, k = coeffs[keep], k[keep]
    # conjugate pairs: keep k > 0 and double the real part
    pos = k > 0
    a = 2.0 * coeffs[pos]
    omega = k[pos] * np.pi / (2.0 * T)
    t = np.asarray(t, dtype=float)
    x = t + 2.0 * T  # phase measured from the first node at -2T
    re = _synthesise(a.real, omega, x, np.cos)
    im = _synthesise(a.imag, omega, x, np.sin)
    return re - im


def ht_via_circular(
    phi: Evaluable,
    horizon: HorizonLike,
    M: int = DEFAULT_M,
    out_grid: Grid1D | None = None,
    split_constant: bool = True,
) -> SampledSignal:
    """Modified Hilbert transform as minus the periodic Hilbert transform
    of the periodic reflection, sampled with ``M`` points per 4T cell.

    ``split_constant`` removes ``phi(0)`` before sampling, which turns the
    jumps of the reflection at multiples of 2T into continuous kinks, and
    adds the closed-form transform of the constant back.
    """
    horizon = as_horizon(horizon)
    if M % 2 or M < 64:
        raise InvalidArgument(f"M must be even and >= 64, got {M}")
    if out_grid is None:
        out_grid = make_grid(horizon, 256, GridKind.UNIFORM_INTERIOR)
    c0 = float(evaluate(phi, 0.0)) if split_constant else 0.0
    rest = (lambda s: evaluate(phi, s) - c0) if c0 else phi
    cell = make_grid(horizon, M, GridKind.PERIODIC_UNIFORM)
    samples = eval_tilde(rest, horizon, cell.nodes)
    values = _interpolate_conjugate(samples, horizon, out_grid.nodes, -1.0)
    if c0:
        values = values + c0 * ht_of_constant(horizon, out_grid.nodes)
    return SampledSignal(out_grid, values, horizon)


def hilbert_of_extension(g: Evaluable, horizon: HorizonLike, M: int, t, extension) -> np.ndarray:
    """Periodic Hilbert transform of ``extension(g)`` sampled on the 4T cell,
    interpolated at ``t``."""
    horizon = as_horizon(horizon)
    cell = make_grid(horizon, M, GridKind.PERIODIC_UNIFORM)
    return _interpolate_conjugate(extension(g, horizon, cell.nodes), horizon, t, 1.0)
