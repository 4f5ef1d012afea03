"""Bat Algorithm (Yang), with loudness and pulse rate held constant.

Per bat, in this draw order: frequency ``f = f_min + (f_max - f_min) * U``;
velocity ``v += (x - best) * f``; candidate ``x + v``; with probability
``1 - r`` the candidate is replaced by a local walk
``best + WALK_SCALE * N(0, 1)`` per coefficient (the step used by Yang's
reference code); after evaluation it is accepted when
``U < A`` and it is no worse than the bat's current fitness. Bats are
processed one after another and the global best is refreshed after each
evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Algorithm

WALK_SCALE = 0.001


@dataclass
class BA(Algorithm):
    name = "ba"

    f_min: float = 0.0
    f_max: float = 100.0
    A: float = 1.5
    r: float = 0.5

    def setup(self, pop, ctx):
        pop.aux["velocity"] = np.zeros_like(pop.positions)
        pop.aux["loudness"] = np.full(len(pop), self.A)
        pop.aux["pulse_rate"] = np.full(len(pop), self.r)

    def step(self, pop, ctx):
        rng = ctx.rng
        v = pop.aux["velocity"]
        loudness = pop.aux["loudness"]
        pulse = pop.aux["pulse_rate"]
        for i in range(len(pop)):
            x = pop.positions[i]
            freq = self.f_min + (self.f_max - self.f_min) * rng.random()
            v[i] = v[i] + (x - ctx.best.position) * freq
            cand = x + v[i]
            if rng.random() > pulse[i]:
                cand = ctx.best.position + WALK_SCALE * rng.standard_normal(x.shape)
            cand = ctx.clamp(cand)
            fit, mask = ctx.evaluate(cand, i)
            if rng.random() < loudness[i] and fit[0] <= pop.fitness[i]:
                pop.set(i, cand, fit[0], mask[0])
