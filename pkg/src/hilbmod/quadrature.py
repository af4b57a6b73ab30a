"""Principal-value and weakly singular quadrature for the modified
Hilbert transform and its kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Evaluable,
    HorizonLike,
    InvalidArgument,
    as_horizon,
    evaluate,
)
from .extensions import eval_tilde
from .spectral import composite_gauss_legendre

DEFAULT_PV_N = 4096
DEFAULT_COT_N = 8192
DEFAULT_SZ_N = 2048


@dataclass(frozen=True)
class PVConfig:
    """Resolution of the principal-value rules.

    ``n`` is the number of midpoint subintervals spread over the whole
    integration range; ``regular_nodes`` sizes the Gauss-Legendre rule
    used for kernels that stay bounded on the interval.
    """

    n: int = DEFAULT_PV_N
    regular_nodes: int = 512

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise InvalidArgument(f"PV subinterval count must be even and >= 8, got {self.n}")
        if self.regular_nodes < 1:
            raise InvalidArgument("regular_nodes must be positive")

    def doubled(self) -> "PVConfig":
        return PVConfig(2 * self.n, 2 * self.regular_nodes)


def pv_integrate(f: Evaluable, pole: float, a: float, b: float, cfg: PVConfig = PVConfig(), breakpoints=()) -> float:
    """Cauchy principal value of ``int_a^b f`` across a simple pole.

    Nodes ``pole +- (j + 1/2) h`` are placed symmetrically about the pole so
    that the odd singular part cancels pairwise. The window extends to the
    nearest of ``a``, ``b`` or a breakpoint; every remaining smooth piece is
    integrated with the composite midpoint rule at the same mesh width.

    Parameters
    ----------
    breakpoints : sequence of float
        Points where ``f`` has a jump or kink. Pieces are never integrated
        across them.
    """
    if not a < pole < b:
        raise InvalidArgument(f"pole {pole} must lie inside ({a}, {b})")
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    if pole in inner:
        raise InvalidArgument("pole coincides with a breakpoint")
    edges = np.array([a, *inner, b], dtype=float)
    h = (b - a) / cfg.n
    i = np.searchsorted(edges, pole) - 1
    lo, hi = edges[i], edges[i + 1]
    w = min(pole - lo, hi - pole)
    m = max(1, int(round(w / h)))
    u = (np.arange(m) + 0.5) * (w / m)
    total = (w / m) * np.sum(evaluate(f, pole + u) + evaluate(f, pole - u))
    pieces = [(lo, pole - w), (pole + w, hi)]
    pieces += [(edges[j], edges[j + 1]) for j in range(len(edges) - 1) if j != i]
    for p, q in pieces:
        length = q - p
        if length <= 1e-15 * (b - a):
            continue
        k = max(1, int(round(length / h)))
        x = p + (np.arange(k) + 0.5) * (length / k)
        total += (length / k) * np.sum(evaluate(f, x))
    return float(total)


def _per_point(fn, t):
    t = np.asarray(t, dtype=float)
    out = np.array([fn(float(x)) for x in np.atleast_1d(t).ravel()])
    return out.reshape(t.shape) if t.ndim else float(out[0])


def _check_interior(t, T):
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0.0) | (t >= T)):
        raise InvalidArgument("evaluation points must lie strictly inside (0, T)")


def ht_csc(phi: Evaluable, horizon: HorizonLike, t, cfg: PVConfig = PVConfig()):
    """Modified Hilbert transform from the two-term cosecant kernel.

    ``(1/2T) pv int_0^T phi(s) [csc(pi(s+t)/2T) + csc(pi(s-t)/2T)] ds``.
    The ``s + t`` term is bounded on (0, T) and uses Gauss-Legendre; the
    ``s - t`` term carries the pole.
    """
    T = as_horizon(horizon).T
    _check_interior(t, T)
    s, w = composite_gauss_legendre(0.0, T, cfg.regular_nodes)
    fs = evaluate(phi, s) * w
    c = np.pi / (2.0 * T)

    def one(x):
        regular = np.sum(fs / np.sin(c * (s + x)))
        singular = pv_integrate(lambda y: evaluate(phi, y) / np.sin(c * (y - x)), x, 0.0, T, cfg)
        return (regular + singular) / (2.0 * T)

    return _per_point(one, t)


def ht_cot_periodic(phi: Evaluable, horizon: HorizonLike, t, cfg: PVConfig = PVConfig(DEFAULT_COT_N)):
    """Minus the cotangent-kernel periodic Hilbert transform of the
    periodic reflection, integrated over the shifted cell (t - 2T, t + 2T).

    The shifted cell keeps ``s = t`` as the only interior pole; the jumps
    and kinks of the reflection at multiples of T are used as breakpoints.
    """
    horizon = as_horizon(horizon)
    T = horizon.T
    _check_interior(t, T)
    c = np.pi / (4.0 * T)

    def one(x):
        f = lambda y: eval_tilde(phi, horizon, y) / np.tan(c * (x - y))
        bps = T * np.arange(-2, 3)
        return -pv_integrate(f, x, x - 2.0 * T, x + 2.0 * T, cfg, bps) / (4.0 * T)

    return _per_point(one, t)


def ht_weakly_singular(phi: Evaluable, dphi: Evaluable | None, horizon: HorizonLike, t, n: int = DEFAULT_SZ_N):
    """Modified Hilbert transform from the logarithmic-kernel form.

    ``-(2/pi) phi(0) log tan(pi t/4T)
    - (1/pi) int_0^T phi'(s) log(tan(pi(s+t)/4T) tan(pi|s-t|/4T)) ds``

    The integral is split at ``s = t`` and each half is mapped through
    ``s = t -+ d u^2``, which clusters Gauss-Legendre nodes at the
    logarithmic singularity.

    Raises
    ------
    InvalidArgument
        If ``dphi`` is missing. Use :func:`hilbmod.spectral.series_derivative`
        to build one explicitly from a series.
    """
    if dphi is None:
        raise InvalidArgument("the weakly singular form needs the derivative of phi")
    T = as_horizon(horizon).T
    _check_interior(t, T)
    if n < 2:
        raise InvalidArgument("n must be at least 2")
    u, wu = composite_gauss_legendre(0.0, 1.0, n)
    c = np.pi / (4.0 * T)
    phi0 = float(evaluate(phi, 0.0))

    def one(x):
        total = 0.0
        for d, sign in ((x, -1.0), (T - x, 1.0)):
            dist = d * u * u
            s = x + sign * dist
            kernel = np.log(np.tan(c * (s + x))) + np.log(np.tan(c * dist))
            total += np.sum(evaluate(dphi, s) * kernel * 2.0 * d * u * wu)
        boundary = -2.0 / np.pi * phi0 * np.log(np.tan(c * x)) if phi0 else 0.0
        return boundary - total / np.pi

    return _per_point(one, t)


def ht_alternative(phi: Evaluable, horizon: HorizonLike, t, cfg: PVConfig = PVConfig()):
    """Modified Hilbert transform from the squared-cosine kernel

    ``-(cos(pi t/2T)/T) pv int_0^T phi(s) sin(pi s/2T)
    / (cos^2(pi s/2T) - cos^2(pi t/2T)) ds``.

    The denominator is evaluated in factored form
    ``-sin(pi(s+t)/2T) sin(pi(s-t)/2T)`` so that its simple zero at
    ``s = t`` carries no cancellation error.
    """
    T = as_horizon(horizon).T
    _check_interior(t, T)
    c = np.pi / (2.0 * T)

    def one(x):
        def f(y):
            denom = -np.sin(c * (y + x)) * np.sin(c * (y - x))
            return evaluate(phi, y) * np.sin(c * y) / denom

        return -np.cos(c * x) / T * pv_integrate(f, x, 0.0, T, cfg)

    return _per_point(one, t)


def csc_series(z, K: int):
    """Partial sum of ``1/z + 2z sum_{k=1}^K (-1)^k / (z^2 - k^2 pi^2)``,
    valid for ``0 < |z| < pi``."""
    z = np.asarray(z, dtype=float)
    zs = np.atleast_1d(z).ravel()
    if np.any(zs == 0) or np.any(np.abs(zs) >= np.pi):
        raise InvalidArgument("csc series needs 0 < |z| < pi")
    if K < 1:
        raise InvalidArgument("K must be positive")
    k = np.arange(1, K + 1, dtype=float)
    signs = np.where(k % 2 == 1, -1.0, 1.0)
    kk = (k * np.pi) ** 2
    out = np.empty(zs.size)
    step = max(1, (1 << 22) // K)
    for i in range(0, zs.size, step):
        zb = zs[i : i + step, None]
        # sum the alternating tail from the smallest terms upward
        tail = np.sum((signs / (zb**2 - kk))[:, ::-1], axis=1)
        out[i : i + step] = 1.0 / zb[:, 0] + 2.0 * zb[:, 0] * tail
    return out.reshape(z.shape) if z.ndim else float(out[0])


def trig_identity_residual(x, sign: float = 1.0):
    """Residual of ``2 csc(2x) = -cot(x +- pi/2) + cot(x)`` for ``|x| < pi/2``,
    relative to the largest of the three terms.

    The terms blow up at ``x -> 0`` and ``x -> +-pi/2``, where the absolute
    residual is dominated by rounding of ``x +- pi/2``.
    """
    x = np.asarray(x, dtype=float)
    terms = (2.0 / np.sin(2.0 * x), 1.0 / np.tan(x + sign * np.pi / 2.0), -1.0 / np.tan(x))
    scale = np.maximum(1.0, np.max(np.abs(terms), axis=0))
    return (terms[0] + terms[1] + terms[2]) / scale
