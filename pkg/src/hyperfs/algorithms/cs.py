"""Cuckoo Search (Yang & Deb).

Lévy phase: every nest ``i`` (in index order) lays an egg
``x_i + alpha * L * (x_i - best)`` with a fresh Lévy vector ``L``; the egg
replaces a uniformly chosen nest ``j`` if it is strictly better.

Discovery phase: the ``floor(p * m)`` worst nests (never the best one) get a
freshly initialized candidate, kept only if it is no worse, as in the
reference implementation's greedy nest update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Algorithm
from .levy import LevySampler


@dataclass
class CS(Algorithm):
    name = "cs"

    beta: float = 1.5
    p: float = 0.25
    alpha: float = 0.8

    def n_discarded(self, m: int) -> int:
        return min(int(np.floor(self.p * m)), m - 1)

    def step(self, pop, ctx):
        rng = ctx.rng
        levy = LevySampler(self.beta)
        m = len(pop)
        shape = pop.positions.shape[1:]
        for i in range(m):
            x = pop.positions[i]
            step = self.alpha * levy.sample(rng, shape) * (x - ctx.best.position)
            egg = ctx.clamp(x + step)
            fit, mask = ctx.evaluate(egg, i)
            j = int(rng.integers(m))
            if fit[0] < pop.fitness[j]:
                pop.set(j, egg, fit[0], mask[0])

        k = self.n_discarded(m)
        if k == 0:
            return
        worst = np.argsort(-pop.fitness, kind="stable")[:k]
        fresh = ctx.random_positions(k)
        fit, masks = ctx.evaluate(fresh, worst)
        for n, i in enumerate(worst):
            if fit[n] <= pop.fitness[i]:
                pop.set(i, fresh[n], fit[n], masks[n])
