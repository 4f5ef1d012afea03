"""Numba switch for the hot kernels.

Set ``HYPERFS_DISABLE_NUMBA=1`` to force the pure-numpy code paths. The flag
is read once at import time; tests and benchmarks that need both paths call
the ``*_numpy`` / ``*_numba`` kernels directly instead of flipping it.
"""

import os

_FLAG = os.environ.get("HYPERFS_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAS_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
