"""The seven meta-heuristics, selectable by name token."""

from .abc import ABC
from .ba import BA
from .base import Algorithm
from .cs import CS
from .fa import FA
from .fpa import FPA
from .levy import LevySampler, levy_sample
from .pso import AIWPSO, PSO, adaptive_inertia

ALGORITHMS = {cls.name: cls for cls in (ABC, AIWPSO, BA, CS, FA, FPA, PSO)}


def make_algorithm(name: str, **params) -> Algorithm:
    try:
        cls = ALGORITHMS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {sorted(ALGORITHMS)}") from None
    return cls(**params)


__all__ = ["ABC", "AIWPSO", "ALGORITHMS", "Algorithm", "BA", "CS", "FA", "FPA", "LevySampler", "PSO",
           "adaptive_inertia", "levy_sample", "make_algorithm"]
