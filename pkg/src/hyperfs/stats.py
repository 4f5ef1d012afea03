"""Paired Wilcoxon signed-rank test and best-technique marking."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ALPHA = 0.05
EXACT_MAX_N = 20


@dataclass(frozen=True)
class WilcoxonResult:
    w_statistic: float
    n_effective: int
    p_value: float
    significant: bool
    method: str


def average_ranks(values) -> np.ndarray:
    """1-based ranks, ties sharing the mean of their positions."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    ranks = np.empty(values.size)
    start = 0
    while start < values.size:
        stop = start + 1
        while stop < values.size and sorted_vals[stop] == sorted_vals[start]:
            stop += 1
        ranks[order[start:stop]] = (start + 1 + stop) / 2.0
        start = stop
    return ranks


def _exact_p(doubled_ranks: np.ndarray, w_doubled: int) -> float:
    # distribution of the positive rank sum over all 2^n sign patterns;
    # ranks are doubled so tied (x.5) ranks stay integral
    counts = np.zeros(int(doubled_ranks.sum()) + 1, dtype=np.int64)
    counts[0] = 1
    for r in doubled_ranks:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.size - r]
        counts += shifted
    n = doubled_ranks.size
    count = int(counts[: w_doubled + 1].sum())
    return min(1.0, 2 * count / 2**n)


def _normal_p(w: float, ranks: np.ndarray) -> float:
    n = ranks.size
    mean = n * (n + 1) / 4.0
    _, ties = np.unique(ranks, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(ties**3 - ties) / 48.0
    z = min(0.0, w - mean + 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(-z / math.sqrt(2.0)))


def wilcoxon_signed_rank(x, y, mode: str = "auto", alpha: float = ALPHA) -> WilcoxonResult:
    """Two-sided test on the paired differences ``x - y``.

    Zero differences are dropped. ``W = min(W+, W-)``. ``mode="auto"`` uses
    the exact null distribution (enumerated via a subset-sum count) up to
    ``EXACT_MAX_N`` non-zero differences and the tie- and
    continuity-corrected normal approximation beyond.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.size < 1:
        raise ValueError("need two paired samples of equal length >= 1")
    if mode not in ("auto", "exact", "normal"):
        raise ValueError(f"unknown mode {mode!r}")
    d = x - y
    d = d[d != 0]
    n = d.size
    if n == 0:
        return WilcoxonResult(0.0, 0, 1.0, False, "none")
    ranks = average_ranks(np.abs(d))
    doubled = np.rint(2 * ranks).astype(np.int64)
    w_plus2 = int(doubled[d > 0].sum())
    w2 = min(w_plus2, int(doubled.sum()) - w_plus2)
    w = w2 / 2.0
    if mode == "exact" or (mode == "auto" and n <= EXACT_MAX_N):
        p, method = _exact_p(doubled, w2), "exact"
    else:
        p, method = _normal_p(w, ranks), "normal"
    return WilcoxonResult(w, n, p, p < alpha, method)


def best_technique(table: dict):
    """Key with the highest mean score; the first one wins ties."""
    if not table:
        raise ValueError("need at least one technique")
    names = list(table)
    return names[int(np.argmax([float(np.mean(table[k])) for k in names]))]


def mark_best(table: dict, alpha: float = ALPHA) -> set:
    """Techniques statistically tied with the highest-mean one.

    ``table`` maps technique name to its per-run scores (paired by run).
    The first technique wins ties on the mean.
    """
    best = best_technique(table)
    bold = {best}
    for name in table:
        if name != best and not wilcoxon_signed_rank(table[name], table[best], alpha=alpha).significant:
            bold.add(name)
    return bold
