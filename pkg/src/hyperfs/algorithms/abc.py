"""Artificial Bee Colony (Karaboga).

One food source per agent. Employed bees and then ``m`` onlookers each try
``x_k + phi * (x_k - x_partner,k)`` on a single random variable ``k``
(``phi ~ U(-1, 1)`` per coefficient, partner another random source); the
trial is kept only on strict improvement, which resets the source's trial
counter, otherwise the counter grows by one. Onlookers pick sources by
roulette over ``1 / (1 + f)`` (``1 + |f|`` for negative ``f``). Finally,
sources whose counter reached ``trials_limit`` are re-initialized by scouts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Algorithm


def selection_weights(fitness: np.ndarray) -> np.ndarray:
    return np.where(fitness >= 0, 1.0 / (1.0 + fitness), 1.0 + np.abs(fitness))


@dataclass
class ABC(Algorithm):
    name = "abc"

    trials_limit: int = 1000

    def setup(self, pop, ctx):
        pop.aux["trials"] = np.zeros(len(pop), dtype=np.int64)

    def _forage(self, i, pop, ctx):
        rng = ctx.rng
        m, n_vars, dim = pop.positions.shape
        k = int(rng.integers(n_vars))
        partner = i
        if m > 1:
            partner = int(rng.integers(m - 1))
            partner += partner >= i
        phi = rng.uniform(-1.0, 1.0, dim)
        cand = pop.positions[i].copy()
        xk = cand[k]
        cand[k] = ctx.clamp(xk + phi * (xk - pop.positions[partner, k]))
        fit, mask = ctx.evaluate(cand, i)
        if fit[0] < pop.fitness[i]:
            pop.set(i, cand, fit[0], mask[0])
            pop.aux["trials"][i] = 0
        else:
            pop.aux["trials"][i] += 1

    def step(self, pop, ctx):
        m = len(pop)
        for i in range(m):
            self._forage(i, pop, ctx)

        for _ in range(m):
            cdf = np.cumsum(selection_weights(pop.fitness))
            i = int(np.searchsorted(cdf, ctx.rng.random() * cdf[-1], side="right"))
            self._forage(min(i, m - 1), pop, ctx)

        trials = pop.aux["trials"]
        scouts = np.flatnonzero(trials >= self.trials_limit)
        if scouts.size:
            fresh = ctx.random_positions(scouts.size)
            fit, masks = ctx.evaluate(fresh, scouts)
            for n, i in enumerate(scouts):
                pop.set(i, fresh[n], fit[n], masks[n])
                trials[i] = 0
