"""Firefly Algorithm (Yang).

Brightness is the fitness at the start of the iteration. For every ordered
pair ``(i, j)``, ``i`` ascending then ``j`` ascending, a firefly ``i`` that is
dimmer than ``j`` moves
``x_i += beta0 * exp(-gamma * r_ij^2) * (x_j - x_i) + alpha * (U - 0.5)``,
with ``r_ij`` the Euclidean distance between the two coefficient blocks. A
firefly with no brighter partner (the brightest, or a lone one) takes only
the random ``alpha`` step. All fireflies are evaluated after the moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .base import Algorithm


@dataclass
class FA(Algorithm):
    name = "fa"

    alpha: float = 0.2
    beta0: float = 1.0
    gamma: float = 1.0

    def attractiveness(self, r2: float) -> float:
        if r2 == 0.0:
            return self.beta0
        return self.beta0 * math.exp(-self.gamma * r2)

    def step(self, pop, ctx):
        rng = ctx.rng
        x = pop.positions
        light = pop.fitness.copy()
        m = len(pop)
        for i in range(m):
            moved = False
            for j in range(m):
                if light[j] < light[i]:
                    diff = x[j] - x[i]
                    beta = self.attractiveness(float(np.sum(diff * diff)))
                    x[i] = ctx.clamp(x[i] + beta * diff + self.alpha * (rng.random(x.shape[1:]) - 0.5))
                    moved = True
            if not moved:
                x[i] = ctx.clamp(x[i] + self.alpha * (rng.random(x.shape[1:]) - 0.5))
        fitness, masks = ctx.evaluate(x, range(m))
        pop.fitness[:] = fitness
        pop.masks[:] = masks
