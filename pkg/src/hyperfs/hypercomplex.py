"""Hypercomplex decision variables.

A decision variable lives in a D-dimensional hypercomplex space (D=1 real,
D=2 complex, D=4 quaternion, D=8 octonion) and is stored as a plain real
coefficient vector. Only the operators the optimizers need are provided:
component-wise addition/subtraction, scalar scaling, clamping into the
coefficient domain [0, 1], and the random/zero initializers. No Hamilton
product or octonion multiplication table is implemented.

Populations are handled as ``(n_agents, n_variables, D)`` float arrays by the
optimizers; the :class:`Hypercomplex` value type wraps a single variable.
Random initialization draws N(0, 1) variates through
``numpy.random.Generator.standard_normal`` (the ziggurat method) and keeps
those that fall inside [0, 1], so a seeded ``PCG64`` stream reproduces the
same coefficients on every platform.
"""

from __future__ import annotations

import numpy as np

SPACE_DIMS = (1, 2, 4, 8)
SPACE_TOKENS = {"std": 1, "quat": 4, "oct": 8}

LOWER = 0.0
UPPER = 1.0


def space_dim(token: str | int) -> int:
    """Resolve ``std``/``quat``/``oct`` (or an integer) to a dimension."""
    if isinstance(token, str) and token in SPACE_TOKENS:
        return SPACE_TOKENS[token]
    try:
        dim = int(token)
    except (TypeError, ValueError):
        raise ValueError(f"unknown space {token!r}; expected one of {sorted(SPACE_TOKENS)}") from None
    if dim not in SPACE_DIMS:
        raise ValueError(f"space dimension must be one of {SPACE_DIMS}, got {dim}")
    return dim


def space_token(dim: int) -> str:
    for token, d in SPACE_TOKENS.items():
        if d == dim:
            return token
    return str(dim)


class Hypercomplex:
    """Immutable coefficient vector ``(h_0, ..., h_{D-1})``."""

    __slots__ = ("_c",)

    def __init__(self, coefficients):
        c = np.array(coefficients, dtype=np.float64).reshape(-1)
        if c.size not in SPACE_DIMS:
            raise ValueError(f"dimension must be one of {SPACE_DIMS}, got {c.size}")
        c.flags.writeable = False
        self._c = c

    @property
    def coefficients(self) -> np.ndarray:
        return self._c

    @property
    def dim(self) -> int:
        return self._c.size

    def _check(self, other: "Hypercomplex") -> None:
        if not isinstance(other, Hypercomplex):
            raise TypeError(f"expected Hypercomplex, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Hypercomplex") -> "Hypercomplex":
        self._check(other)
        return Hypercomplex(self._c + other._c)

    def __sub__(self, other: "Hypercomplex") -> "Hypercomplex":
        self._check(other)
        return Hypercomplex(self._c - other._c)

    def __mul__(self, s: float) -> "Hypercomplex":
        return scale(self, s)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypercomplex):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self._c, other._c))

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self._c.tolist())

    def __repr__(self) -> str:
        return f"Hypercomplex({self._c.tolist()})"


def add(a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
    """Component-wise sum. Not clamped."""
    return a + b


def sub(a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
    return a - b


def scale(a: Hypercomplex, s: float) -> Hypercomplex:
    return Hypercomplex(a.coefficients * float(s))


def clamp(a: Hypercomplex) -> Hypercomplex:
    return Hypercomplex(np.clip(a.coefficients, LOWER, UPPER))


def zero_init(dim: int) -> Hypercomplex:
    return Hypercomplex(np.zeros(space_dim(dim)))


def rand_init(rng: np.random.Generator, dim: int) -> Hypercomplex:
    """Gaussian coefficients restricted to [0, 1] (see :func:`rand_coefficients`)."""
    return Hypercomplex(rand_coefficients(rng, (space_dim(dim),)))


def rand_coefficients(rng: np.random.Generator, shape) -> np.ndarray:
    """N(0, 1) draws rejected until they land in [0, 1].

    Sampling runs in rounds: each round draws one ``standard_normal`` value
    per still-empty slot and fills, in C order, as many slots as it has
    accepted draws. The result is the standard normal truncated to [0, 1]
    (mean about 0.46), without the point masses that clamping would put on
    the domain edges.
    """
    out = np.empty(int(np.prod(shape, dtype=np.int64)))
    filled = 0
    while filled < out.size:
        z = rng.standard_normal(out.size - filled)
        z = z[(z >= LOWER) & (z <= UPPER)]
        out[filled:filled + z.size] = z
        filled += z.size
    return out.reshape(shape)


def clamp_array(x: np.ndarray) -> np.ndarray:
    return np.clip(x, LOWER, UPPER)
