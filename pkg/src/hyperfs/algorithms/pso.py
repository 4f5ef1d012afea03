"""Particle Swarm Optimization and its adaptive-inertia variant.

PSO follows Kennedy & Eberhart with a constant inertia weight. AIWPSO
(Nickabadi et al.) recomputes the inertia weight every iteration from the
fraction of particles that improved their personal best in the previous
iteration: ``w = (w_max - w_min) * successes / m + w_min``. Before the first
iteration no success information exists and ``w_max`` is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Algorithm


@dataclass
class PSO(Algorithm):
    name = "pso"

    c1: float = 1.7
    c2: float = 1.7
    w: float = 0.7

    def setup(self, pop, ctx):
        pop.aux["velocity"] = np.zeros_like(pop.positions)
        pop.aux["pbest"] = pop.positions.copy()
        pop.aux["pbest_fitness"] = pop.fitness.copy()
        pop.aux["successes"] = len(pop)

    def inertia(self, pop) -> float:
        return self.w

    def step(self, pop, ctx):
        x = pop.positions
        v = pop.aux["velocity"]
        pbest = pop.aux["pbest"]
        pbest_fit = pop.aux["pbest_fitness"]
        w = self.inertia(pop)
        pop.aux["w"] = w

        r1 = ctx.rng.random(x.shape)
        r2 = ctx.rng.random(x.shape)
        v[:] = w * v + self.c1 * r1 * (pbest - x) + self.c2 * r2 * (ctx.best.position - x)
        x[:] = ctx.clamp(x + v)

        fitness, masks = ctx.evaluate(x, range(len(pop)))
        pop.fitness[:] = fitness
        pop.masks[:] = masks
        improved = fitness < pbest_fit
        pbest[improved] = x[improved]
        pbest_fit[improved] = fitness[improved]
        pop.aux["successes"] = int(improved.sum())


def adaptive_inertia(successes: int, n_agents: int, w_min: float, w_max: float) -> float:
    return (w_max - w_min) * (successes / n_agents) + w_min


@dataclass
class AIWPSO(PSO):
    name = "aiwpso"

    w_min: float = 0.5
    w_max: float = 1.5

    def inertia(self, pop) -> float:
        return adaptive_inertia(pop.aux["successes"], len(pop), self.w_min, self.w_max)
