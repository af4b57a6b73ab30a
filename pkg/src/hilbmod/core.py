"""Shared types, grids, inner products and error norms."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import roots_legendre

Evaluable = Callable[[np.ndarray], np.ndarray]

DEFAULT_MARGIN = 0.05


class InvalidArgument(ValueError):
    """Raised when an operation's precondition is violated."""


class GridKind(str, Enum):
    UNIFORM_INTERIOR = "uniform-interior"
    GAUSS_LEGENDRE = "gauss-legendre"
    PERIODIC_UNIFORM = "periodic-uniform"


@dataclass(frozen=True)
class Horizon:
    """Length ``T`` of the interval (0, T)."""

    T: float

    def __post_init__(self):
        if not np.isfinite(self.T) or self.T <= 0:
            raise InvalidArgument(f"horizon T must be positive, got {self.T}")


HorizonLike = Union[Horizon, float]


def as_horizon(horizon: HorizonLike) -> Horizon:
    return horizon if isinstance(horizon, Horizon) else Horizon(float(horizon))


def evaluate(f: Evaluable, x) -> np.ndarray:
    """Evaluate ``f`` on ``x`` and broadcast the result to ``x``'s shape.

    Lets scalar-returning callables such as ``lambda s: 1.0`` stand in for
    vectorised functions.
    """
    x = np.asarray(x, dtype=float)
    return np.array(np.broadcast_to(np.asarray(f(x), dtype=float), x.shape))


@dataclass(frozen=True, eq=False)
class Grid1D:
    nodes: np.ndarray
    weights: Optional[np.ndarray]
    kind: GridKind

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "kind", GridKind(self.kind))
        if nodes.ndim != 1 or nodes.size == 0:
            raise InvalidArgument("grid nodes must be a non-empty 1-D array")
        if np.any(np.diff(nodes) <= 0):
            raise InvalidArgument("grid nodes must be strictly increasing")
        if self.weights is not None:
            weights = np.asarray(self.weights, dtype=float)
            if weights.shape != nodes.shape:
                raise InvalidArgument("weights and nodes differ in length")
            if np.any(weights <= 0):
                raise InvalidArgument("quadrature weights must be positive")
            object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    def same_as(self, other: "Grid1D") -> bool:
        if self is other:
            return True
        if self.kind != other.kind or len(self) != len(other):
            return False
        if not np.array_equal(self.nodes, other.nodes):
            return False
        if (self.weights is None) != (other.weights is None):
            return False
        return self.weights is None or np.array_equal(self.weights, other.weights)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    grid: Grid1D
    values: np.ndarray
    horizon: Horizon

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.nodes.shape:
            raise InvalidArgument("values length must equal the grid node count")
        if not np.all(np.isfinite(values)):
            raise InvalidArgument("sampled values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, f: Evaluable, grid: Grid1D, horizon: HorizonLike):
        return cls(grid, evaluate(f, grid.nodes), as_horizon(horizon))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes


@dataclass(frozen=True)
class CorpusCase:
    """A named test function with optional derivative and closed-form H_T."""

    name: str
    f: Evaluable
    horizon: Horizon
    df: Optional[Evaluable] = None
    exact_ht: Optional[Evaluable] = None

    def __post_init__(self):
        object.__setattr__(self, "horizon", as_horizon(self.horizon))
        if self.df is not None:
            self.check_derivative()

    def check_derivative(self, rtol: float = 1e-4, atol: float = 1e-6):
        T = self.horizon.T
        h = 1e-6 * T
        t = np.linspace(0.05 * T, 0.95 * T, 10)
        fd = (evaluate(self.f, t + h) - evaluate(self.f, t - h)) / (2 * h)
        df = evaluate(self.df, t)
        if not np.allclose(fd, df, rtol=rtol, atol=atol):
            raise InvalidArgument(
                f"derivative of case {self.name!r} fails the finite-difference check"
            )


def make_grid(horizon: HorizonLike, n: int, kind: Union[GridKind, str]) -> Grid1D:
    """Build an evaluation or quadrature grid.

    ``uniform-interior`` gives midpoints ``(j + 1/2) T / n`` with weights
    ``T / n``; ``gauss-legendre`` maps the standard rule to (0, T);
    ``periodic-uniform`` spans one cell ``[-2T, 2T)`` of length 4T.
    """
    T = as_horizon(horizon).T
    kind = GridKind(kind)
    if int(n) != n or n < 2:
        raise InvalidArgument(f"grid size must be an integer >= 2, got {n}")
    n = int(n)
    if kind is GridKind.UNIFORM_INTERIOR:
        nodes = (np.arange(n) + 0.5) * T / n
        weights = np.full(n, T / n)
    elif kind is GridKind.GAUSS_LEGENDRE:
        x, w = roots_legendre(n)
        nodes = 0.5 * T * (x + 1.0)
        weights = 0.5 * T * w
    else:
        nodes = -2.0 * T + np.arange(n) * 4.0 * T / n
        weights = np.full(n, 4.0 * T / n)
    return Grid1D(nodes, weights, kind)


def l2_inner(a: SampledSignal, b: SampledSignal) -> float:
    """Discrete L2 inner product ``sum_j w_j a_j b_j``."""
    if not a.grid.same_as(b.grid):
        raise InvalidArgument("signals live on different grids")
    return float(np.sum(_weights(a.grid, a.horizon) * a.values * b.values))


def _weights(grid: Grid1D, horizon: Horizon) -> np.ndarray:
    if grid.weights is not None:
        return grid.weights
    if grid.kind is GridKind.UNIFORM_INTERIOR:
        return np.full(len(grid), horizon.T / len(grid))
    raise InvalidArgument("grid carries no quadrature weights")


def error_norms(approx: SampledSignal, exact: Evaluable, margin: float = DEFAULT_MARGIN):
    """Discrete L2 error over all nodes and sup error away from the ends.

    Returns
    -------
    (l2_error, linf_interior_error) : tuple of float
        The sup norm only counts nodes in ``[margin T, (1 - margin) T]``.
    """
    if not 0.0 <= margin < 0.5:
        raise InvalidArgument(f"margin must lie in [0, 0.5), got {margin}")
    T = approx.horizon.T
    t = approx.nodes
    diff = approx.values - evaluate(exact, t)
    if not np.all(np.isfinite(diff)):
        raise InvalidArgument("reference function is not finite on the grid")
    w = _weights(approx.grid, approx.horizon)
    l2 = float(np.sqrt(np.sum(w * diff**2)))
    inside = (t >= margin * T) & (t <= (1.0 - margin) * T)
    linf = float(np.max(np.abs(diff[inside]))) if np.any(inside) else 0.0
    return l2, linf


def ht_of_constant(horizon: HorizonLike, t) -> np.ndarray:
    """Closed-form transform of the constant 1: ``-(2/pi) log tan(pi t / 4T)``."""
    T = as_horizon(horizon).T
    t = np.asarray(t, dtype=float)
    return -2.0 / np.pi * np.log(np.tan(np.pi * t / (4.0 * T)))
