"""Reflections and periodic extensions of functions given on [0, T].

All evaluators are vectorised over ``s``. Points that land exactly on a
branch boundary use the left-closed interval convention.
"""

from __future__ import annotations

import numpy as np

from .core import Evaluable, HorizonLike, InvalidArgument, as_horizon, evaluate


def _reduce(s: np.ndarray, T: float) -> np.ndarray:
    # Points already in [-2T, 2T) pass through untouched (floor == 0), which
    # keeps eval_tilde bit-identical to eval_bar there.
    k = np.floor((s + 2.0 * T) / (4.0 * T))
    r = s - 4.0 * T * k
    # rounding can push r just outside the cell
    r = np.where(r >= 2.0 * T, r - 4.0 * T, r)
    return np.where(r < -2.0 * T, r + 4.0 * T, r)


def _dispatch(r, T, f, branches):
    out = np.zeros_like(r)
    edges = (-2.0 * T, -T, 0.0, T, 2.0 * T)
    for (lo, hi), (sign, arg) in zip(zip(edges[:-1], edges[1:]), branches):
        mask = (r >= lo) & (r < hi)
        if np.any(mask):
            out[mask] = sign * evaluate(f, arg(r[mask]))
    return out


def _odd_branches(T):
    return (
        (-1.0, lambda r: r + 2.0 * T),
        (-1.0, lambda r: -r),
        (1.0, lambda r: r),
        (1.0, lambda r: 2.0 * T - r),
    )


def eval_tilde(phi: Evaluable, horizon: HorizonLike, s):
    """Odd, 2T-antiperiodic, 4T-periodic extension of ``phi``."""
    T = as_horizon(horizon).T
    s = np.asarray(s, dtype=float)
    r = _reduce(np.atleast_1d(s), T)
    out = _dispatch(r, T, phi, _odd_branches(T))
    return out.reshape(s.shape) if s.ndim else float(out[0])


def eval_bar(phi: Evaluable, horizon: HorizonLike, s):
    """Odd-then-even reflection of ``phi`` supported on [-2T, 2T)."""
    T = as_horizon(horizon).T
    s = np.asarray(s, dtype=float)
    r = np.atleast_1d(s)
    out = _dispatch(r, T, phi, _odd_branches(T))
    return out.reshape(s.shape) if s.ndim else float(out[0])


def eval_tilde_derivative(dphi: Evaluable, horizon: HorizonLike, s):
    """Derivative of the periodic reflection on (-2T, 2T), given ``phi'``."""
    T = as_horizon(horizon).T
    s = np.asarray(s, dtype=float)
    r = np.atleast_1d(s)
    if np.any((r <= -2.0 * T) | (r >= 2.0 * T)):
        raise InvalidArgument("derivative extension is only defined on (-2T, 2T)")
    branches = (
        (-1.0, lambda r: r + 2.0 * T),
        (1.0, lambda r: -r),
        (1.0, lambda r: r),
        (-1.0, lambda r: 2.0 * T - r),
    )
    out = _dispatch(r, T, dphi, branches)
    return out.reshape(s.shape) if s.ndim else float(out[0])


def eval_even_tilde(g: Evaluable, horizon: HorizonLike, s):
    """Even, 4T-periodic extension of ``g`` with ``g(2T - s) = -g(s)``.

    This is the parity of the quarter-wave cosines, so it is the natural
    extension of a transformed function fed back into the periodic Hilbert
    transform.
    """
    T = as_horizon(horizon).T
    s = np.asarray(s, dtype=float)
    r = _reduce(np.atleast_1d(s), T)
    branches = (
        (-1.0, lambda r: r + 2.0 * T),
        (1.0, lambda r: -r),
        (1.0, lambda r: r),
        (-1.0, lambda r: 2.0 * T - r),
    )
    out = _dispatch(r, T, g, branches)
    return out.reshape(s.shape) if s.ndim else float(out[0])
