"""Lévy-stable steps by Mantegna's algorithm."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LevySampler:
    beta: float = 1.5

    def __post_init__(self):
        if not 0 < self.beta <= 2:
            raise ValueError(f"Lévy exponent must lie in (0, 2], got {self.beta}")

    @property
    def sigma_u(self) -> float:
        b = self.beta
        num = math.gamma(1 + b) * math.sin(math.pi * b / 2)
        den = math.gamma((1 + b) / 2) * b * 2 ** ((b - 1) / 2)
        return (num / den) ** (1 / b)

    def sample(self, rng: np.random.Generator, size=None):
        """``u / |v|^(1/beta)`` with ``u ~ N(0, sigma_u^2)``, ``v ~ N(0, 1)``.

        All ``u`` draws are taken before all ``v`` draws.
        """
        u = rng.standard_normal(size) * self.sigma_u
        v = rng.standard_normal(size)
        return u / np.abs(v) ** (1 / self.beta)


def levy_sample(sampler: LevySampler, rng: np.random.Generator) -> float:
    return float(sampler.sample(rng))
