"""Search space, population bookkeeping and the generic optimization loop.

Agent positions are stored as one ``(n_agents, n_variables, D)`` array of
hypercomplex coefficients in [0, 1]. An agent is scored by binarizing its
position into a feature mask (one thresholds stream per agent) and handing
the mask to the objective, which is minimized. The mask that produced a
fitness is stored next to it, so the best solution's reported features
always match its reported fitness.

Randomness: the run's generator drives the algorithm itself; agent ``i``
binarizes with a stream derived from it by ``i + 1`` PCG64 jumps. Masks are
drawn sequentially in agent order and only the objective calls may run on a
thread pool, so results do not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .binary import DEFAULT_BOUNDS, DEFAULT_P, Bounds, mask_from_agent
from .hypercomplex import SPACE_DIMS, clamp_array, rand_coefficients


class OptimizationError(RuntimeError):
    """The objective raised during a run."""


def _instrument_default() -> bool:
    return os.environ.get("HYPERFS_INSTRUMENT", "").strip().lower() not in ("", "0", "false", "no")


@dataclass(frozen=True)
class SearchSpace:
    n_variables: int
    n_agents: int = 15
    n_iterations: int = 25
    space_dim: int = 1
    bounds: Bounds = DEFAULT_BOUNDS
    p: float = DEFAULT_P

    def __post_init__(self):
        if self.n_agents < 1 or self.n_variables < 1 or self.n_iterations < 1:
            raise ValueError("n_agents, n_variables and n_iterations must all be >= 1")
        if self.space_dim not in SPACE_DIMS:
            raise ValueError(f"space_dim must be one of {SPACE_DIMS}")
        if not self.p >= 1:
            raise ValueError(f"norm order p must be >= 1, got {self.p}")

    @property
    def shape(self) -> tuple:
        return (self.n_variables, self.space_dim)


@dataclass(frozen=True)
class Agent:
    position: np.ndarray
    fitness: float
    mask: np.ndarray


@dataclass
class Population:
    positions: np.ndarray
    fitness: np.ndarray
    masks: np.ndarray
    aux: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.positions.shape[0]

    def agent(self, i: int) -> Agent:
        return Agent(self.positions[i].copy(), float(self.fitness[i]), self.masks[i].copy())

    @property
    def agents(self) -> list:
        return [self.agent(i) for i in range(len(self))]

    def set(self, i: int, position, fitness: float, mask) -> None:
        self.positions[i] = position
        self.fitness[i] = fitness
        self.masks[i] = mask


@dataclass
class BestSolution:
    position: np.ndarray
    fitness: float
    mask: np.ndarray

    @property
    def n_selected(self) -> int:
        return int(np.count_nonzero(self.mask))


@dataclass
class RunResult:
    best: BestSolution
    trace: np.ndarray
    initial_fitness: float
    n_evaluations: int
    coefficient_updates: np.ndarray
    history: list | None = None


class StepContext:
    """What an algorithm step may touch besides the population."""

    def __init__(self, space: SearchSpace, objective, rng: np.random.Generator, n_workers: int = 1,
                 decoder=None):
        self.space = space
        self.objective = objective
        self.decoder = decoder
        self.rng = rng
        self.agent_streams = [np.random.Generator(rng.bit_generator.jumped(i + 1))
                              for i in range(space.n_agents)]
        self.iteration = 0
        self.best: BestSolution | None = None
        self.n_evaluations = 0
        self.coefficient_updates = 0
        self._pool = ThreadPoolExecutor(n_workers) if n_workers > 1 else None

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()

    def clamp(self, x: np.ndarray) -> np.ndarray:
        """Project updated coefficients into [0, 1]; counts the work done."""
        self.coefficient_updates += np.size(x)
        return clamp_array(x)

    def random_positions(self, k: int) -> np.ndarray:
        x = rand_coefficients(self.rng, (k, *self.space.shape))
        self.coefficient_updates += x.size
        return x

    def masks_for(self, positions: np.ndarray, agents) -> np.ndarray:
        space = self.space
        if self.decoder is not None:
            return np.stack([self.decoder(pos, self.agent_streams[a]) for pos, a in zip(positions, agents)])
        return np.stack([mask_from_agent(pos, space.p, space.bounds, self.agent_streams[a])
                         for pos, a in zip(positions, agents)])

    def evaluate(self, positions: np.ndarray, agents) -> tuple:
        """Score ``positions[k]`` with agent ``agents[k]``'s binarization stream.

        Updates the global best (strict improvement, first agent wins ties).
        Returns ``(fitness, masks)``.
        """
        positions = np.asarray(positions)
        if positions.ndim == 2:
            positions = positions[None]
            agents = [agents]
        agents = list(agents)
        masks = self.masks_for(positions, agents)
        try:
            if self._pool is None:
                fitness = [self.objective(m) for m in masks]
            else:
                fitness = list(self._pool.map(self.objective, masks))
        except Exception as exc:
            raise OptimizationError(
                f"objective failed at iteration {self.iteration}: {exc}") from exc
        fitness = np.asarray(fitness, dtype=np.float64)
        self.n_evaluations += len(fitness)
        for k in range(len(fitness)):
            if self.best is None or fitness[k] < self.best.fitness:
                self.best = BestSolution(positions[k].copy(), float(fitness[k]), masks[k].copy())
        return fitness, masks


def initialize(space: SearchSpace, ctx: StepContext) -> Population:
    """Random population, evaluated once; sets ``ctx.best``."""
    positions = ctx.random_positions(space.n_agents)
    fitness, masks = ctx.evaluate(positions, range(space.n_agents))
    return Population(positions, fitness, masks)


def run(space: SearchSpace, algorithm, objective, rng: np.random.Generator, n_workers: int = 1,
        instrument: bool | None = None, callback=None, decoder=None) -> RunResult:
    """Initialize, then perform exactly ``space.n_iterations`` algorithm steps.

    ``trace[t]`` is the best fitness after step ``t + 1``. With
    ``instrument`` on (default from ``HYPERFS_INSTRUMENT``) every step is
    checked for in-domain coefficients and a non-increasing trace, and the
    population is snapshotted into ``RunResult.history``.
    ``callback(iteration, population, best)`` runs after each step.

    ``decoder(position, agent_stream)`` replaces the binary feature mask as
    what the objective sees (e.g. the span-mapped reals for continuous
    problems); its output is stored where masks normally go.
    """
    if instrument is None:
        instrument = _instrument_default()
    if isinstance(rng, (int, np.integer)):
        rng = np.random.Generator(np.random.PCG64(rng))
    ctx = StepContext(space, objective, rng, n_workers, decoder)
    try:
        pop = initialize(space, ctx)
        algorithm.setup(pop, ctx)
        initial = ctx.best.fitness
        trace = np.empty(space.n_iterations)
        updates = np.empty(space.n_iterations, dtype=np.int64)
        history = [pop.positions.copy()] if instrument else None
        for t in range(space.n_iterations):
            ctx.iteration = t + 1
            before = ctx.coefficient_updates
            algorithm.step(pop, ctx)
            updates[t] = ctx.coefficient_updates - before
            trace[t] = ctx.best.fitness
            if instrument:
                _check_step(pop, trace, t, initial)
                history.append(pop.positions.copy())
            if callback is not None:
                callback(t + 1, pop, ctx.best)
    finally:
        ctx.close()
    return RunResult(best=ctx.best, trace=trace, initial_fitness=initial, n_evaluations=ctx.n_evaluations,
                     coefficient_updates=updates, history=history)


def _check_step(pop: Population, trace: np.ndarray, t: int, initial: float) -> None:
    x = pop.positions
    if not (np.all(x >= 0.0) and np.all(x <= 1.0)):
        raise AssertionError(f"coefficients left [0, 1] at iteration {t + 1}")
    previous = trace[t - 1] if t else initial
    if trace[t] > previous:
        raise AssertionError(f"best fitness increased at iteration {t + 1}")
