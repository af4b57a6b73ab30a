"""Built-in test functions with derivatives and known transforms."""

from __future__ import annotations

import re
from typing import Optional

import numpy as np

from .core import CorpusCase, Horizon, InvalidArgument, ht_of_constant

NAMES = ("one", "sinpi", "xsq", "poly3", "basis-k")


def _one(T):
    return CorpusCase(
        "one",
        lambda s: np.ones_like(np.asarray(s, dtype=float)),
        Horizon(T),
        df=lambda s: np.zeros_like(np.asarray(s, dtype=float)),
        exact_ht=lambda t: ht_of_constant(T, t),
    )


def _sinpi(T):
    if T is not None and T != 0.5:
        raise InvalidArgument("case 'sinpi' is defined for T = 1/2 only")
    return CorpusCase(
        "sinpi",
        lambda s: np.sin(np.pi * s),
        Horizon(0.5),
        df=lambda s: np.pi * np.cos(np.pi * s),
        exact_ht=lambda t: np.cos(np.pi * t),
    )


def _xsq(T):
    return CorpusCase("xsq", lambda s: s**2, Horizon(T), df=lambda s: 2.0 * s)


def _poly3(T):
    return CorpusCase(
        "poly3",
        lambda s: s**3 - s**2 * T,
        Horizon(T),
        df=lambda s: 3.0 * s**2 - 2.0 * s * T,
    )


def _basis(k, T):
    w = (k + 0.5) * np.pi / T
    return CorpusCase(
        f"basis-{k}",
        lambda s: np.sin(w * s),
        Horizon(T),
        df=lambda s: w * np.cos(w * s),
        exact_ht=lambda t: np.cos(w * t),
    )


def get_case(name: str, T: Optional[float] = None) -> CorpusCase:
    """Look up a built-in case; ``T`` defaults to 1 (``sinpi`` is fixed at 1/2)."""
    if name == "sinpi":
        return _sinpi(T)
    T = 1.0 if T is None else float(T)
    if name == "one":
        return _one(T)
    if name == "xsq":
        return _xsq(T)
    if name == "poly3":
        return _poly3(T)
    match = re.fullmatch(r"basis-(\d+)", name)
    if match:
        return _basis(int(match.group(1)), T)
    raise KeyError(f"unknown corpus case {name!r}")


def default_corpus(T: Optional[float] = None):
    names = ["one", "sinpi", "xsq", "poly3", "basis-0", "basis-1", "basis-2", "basis-3"]
    return [get_case(n, T if n != "sinpi" else None) for n in names]
