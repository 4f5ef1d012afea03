"""Hypercomplex -> real -> bit mapping.

Each decision variable is reduced to a real value by its Minkowski p-norm,
rescaled onto ``[lower, upper]`` by the span function, squashed by a sigmoid
and compared against a fresh ``U(0, 1)`` threshold. One threshold is drawn
per feature per evaluation, in feature-index order.

Other transfer functions (V-shaped, tanh) would plug in where
:func:`sigmoid` is called in :func:`transfer_probabilities`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypercomplex import Hypercomplex

DEFAULT_P = 2.0


@dataclass(frozen=True)
class Bounds:
    lower: float = -20.0
    upper: float = 20.0

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"lower bound must be below upper bound, got [{self.lower}, {self.upper}]")


DEFAULT_BOUNDS = Bounds()


def _coeffs(q) -> np.ndarray:
    if isinstance(q, Hypercomplex):
        return q.coefficients
    return np.asarray(q, dtype=np.float64)


def _check_p(p: float) -> None:
    if not p >= 1:
        raise ValueError(f"norm order p must be >= 1, got {p}")


def norm_p(q, p: float = DEFAULT_P):
    """Minkowski p-norm over the last axis; scalar for a single variable."""
    _check_p(p)
    c = np.abs(_coeffs(q))
    if p == 2:
        out = np.sqrt(np.sum(c * c, axis=-1))
    elif p == 1:
        out = np.sum(c, axis=-1)
    else:
        out = np.sum(c**p, axis=-1) ** (1.0 / p)
    return float(out) if np.ndim(out) == 0 else out


def span(q, p: float = DEFAULT_P, bounds: Bounds = DEFAULT_BOUNDS):
    """Rescale the norm of coefficients in [0, 1] onto ``bounds``."""
    c = _coeffs(q)
    dim = c.shape[-1]
    # sqrt on both sides for p=2 so the all-ones norm hits the upper bound exactly
    scale = np.sqrt(dim) if p == 2 else dim ** (1.0 / p)
    ratio = np.asarray(norm_p(c, p)) / scale
    out = (bounds.upper - bounds.lower) * ratio + bounds.lower
    return float(out) if np.ndim(out) == 0 else out


def sigmoid(x):
    out = 1.0 / (1.0 + np.exp(-np.asarray(x, dtype=np.float64)))
    return float(out) if np.ndim(out) == 0 else out


def transfer_probabilities(position, p: float = DEFAULT_P, bounds: Bounds = DEFAULT_BOUNDS) -> np.ndarray:
    """Selection probability per variable of an ``(N, D)`` position."""
    return sigmoid(span(position, p, bounds))


def binarize(q, p: float = DEFAULT_P, bounds: Bounds = DEFAULT_BOUNDS, rng: np.random.Generator = None) -> int:
    """One feature bit; consumes exactly one uniform draw from ``rng``."""
    alpha = rng.random()
    return int(sigmoid(span(q, p, bounds)) > alpha)


def mask_from_agent(position, p: float = DEFAULT_P, bounds: Bounds = DEFAULT_BOUNDS,
                    rng: np.random.Generator = None) -> np.ndarray:
    """Feature mask for an agent position.

    ``position`` is either an ``(N, D)`` array or a sequence of
    :class:`Hypercomplex`. The N thresholds come from a single
    ``rng.random(N)`` call, which yields the same values as N sequential
    :func:`binarize` calls.
    """
    if len(position) == 0:
        return np.zeros(0, dtype=bool)
    if not isinstance(position, np.ndarray):
        position = np.stack([_coeffs(q) for q in position])
    prob = np.atleast_1d(transfer_probabilities(position, p, bounds))
    alpha = rng.random(prob.shape[0])
    return prob > alpha
