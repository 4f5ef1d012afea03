"""Flower Pollination Algorithm (Yang).

With probability ``p`` a flower pollinates locally,
``x + eps * (x_a - x_b)`` for two distinct random flowers ``a, b`` and
``eps ~ U(0, 1)``; otherwise globally, ``x + L * (best - x)`` with a Lévy
vector ``L``. The candidate replaces the flower when it is no worse. A lone
flower cannot pollinate locally and keeps its position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import Algorithm
from .levy import LevySampler


@dataclass
class FPA(Algorithm):
    name = "fpa"

    beta: float = 1.5
    p: float = 0.8

    def step(self, pop, ctx):
        rng = ctx.rng
        levy = LevySampler(self.beta)
        m = len(pop)
        shape = pop.positions.shape[1:]
        for i in range(m):
            x = pop.positions[i]
            if rng.random() < self.p:
                if m < 2:
                    continue
                a, b = rng.choice(m, size=2, replace=False)
                cand = x + rng.random() * (pop.positions[a] - pop.positions[b])
            else:
                cand = x + levy.sample(rng, shape) * (ctx.best.position - x)
            cand = ctx.clamp(cand)
            fit, mask = ctx.evaluate(cand, i)
            if fit[0] <= pop.fitness[i]:
                pop.set(i, cand, fit[0], mask[0])
