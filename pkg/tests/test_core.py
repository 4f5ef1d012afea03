import numpy as np
import pytest

from hyperfs.algorithms import CS, PSO, Algorithm
from hyperfs.core import OptimizationError, SearchSpace, StepContext, initialize, run


def popcount_fraction(mask):
    return float(np.count_nonzero(mask)) / mask.size


def test_search_space_validation():
    with pytest.raises(ValueError):
        SearchSpace(n_variables=0)
    with pytest.raises(ValueError):
        SearchSpace(n_variables=3, n_agents=0)
    with pytest.raises(ValueError):
        SearchSpace(n_variables=3, n_iterations=0)
    with pytest.raises(ValueError):
        SearchSpace(n_variables=3, space_dim=3)
    with pytest.raises(ValueError):
        SearchSpace(n_variables=3, p=0.5)
    space = SearchSpace(n_variables=7, space_dim=4)
    assert (space.n_agents, space.n_iterations, space.shape) == (15, 25, (7, 4))


def make_ctx(seed, space, objective=popcount_fraction):
    return StepContext(space, objective, np.random.default_rng(seed))


def test_initialize_reproducible_and_in_domain():
    space = SearchSpace(n_variables=6, n_agents=9, space_dim=8)
    a = initialize(space, make_ctx(3, space))
    b = initialize(space, make_ctx(3, space))
    assert len(a) == 9 and a.positions.shape == (9, 6, 8)
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.masks, b.masks)
    assert np.all((a.positions >= 0) & (a.positions <= 1))


def test_initialize_sets_best():
    space = SearchSpace(n_variables=6, n_agents=9)
    ctx = make_ctx(0, space)
    pop = initialize(space, ctx)
    assert ctx.best.fitness == pop.fitness.min()
    assert ctx.n_evaluations == 9
    assert popcount_fraction(ctx.best.mask) == ctx.best.fitness


def test_constant_objective_gives_constant_trace():
    res = run(SearchSpace(n_variables=4, n_agents=5, n_iterations=10), PSO(), lambda m: 0.25, 1)
    assert res.trace.tolist() == [0.25] * 10


def test_cs_on_feature_count_toy_problem():
    space = SearchSpace(n_variables=5, n_agents=15, n_iterations=25)
    res = run(space, CS(), popcount_fraction, np.random.default_rng(11))
    assert len(res.trace) == 25
    assert res.trace[-1] <= res.initial_fitness
    assert res.trace.min() == res.trace[-1]
    assert np.all(np.diff(res.trace) <= 0)


def test_repeated_run_identical():
    space = SearchSpace(n_variables=8, n_agents=6, n_iterations=8, space_dim=4)
    a = run(space, PSO(), popcount_fraction, 42)
    b = run(space, PSO(), popcount_fraction, 42)
    assert np.array_equal(a.trace, b.trace)
    assert np.array_equal(a.best.mask, b.best.mask)
    assert np.array_equal(a.best.position, b.best.position)


def test_threaded_evaluation_bit_identical():
    space = SearchSpace(n_variables=8, n_agents=10, n_iterations=6, space_dim=4)
    serial = run(space, CS(), popcount_fraction, 5)
    threaded = run(space, CS(), popcount_fraction, 5, n_workers=4)
    assert np.array_equal(serial.trace, threaded.trace)
    assert np.array_equal(serial.best.mask, threaded.best.mask)


def test_best_mask_reproduces_best_fitness():
    space = SearchSpace(n_variables=10, n_agents=8, n_iterations=5)
    res = run(space, PSO(), popcount_fraction, 9)
    assert popcount_fraction(res.best.mask) == res.best.fitness
    assert res.best.n_selected == np.count_nonzero(res.best.mask)


def test_objective_failure_is_reported():
    def broken(mask):
        raise RuntimeError("boom")

    with pytest.raises(OptimizationError, match="boom"):
        run(SearchSpace(n_variables=3, n_agents=2, n_iterations=2), PSO(), broken, 0)


class Escape(Algorithm):
    name = "escape"

    def step(self, pop, ctx):
        pop.positions[0, 0, 0] = 1.5


def test_instrumented_run_catches_out_of_domain_positions():
    space = SearchSpace(n_variables=3, n_agents=2, n_iterations=2)
    with pytest.raises(AssertionError, match="iteration 1"):
        run(space, Escape(), popcount_fraction, 0, instrument=True)
    run(space, Escape(), popcount_fraction, 0, instrument=False)


def test_instrumented_history_and_callback():
    seen = []
    space = SearchSpace(n_variables=3, n_agents=4, n_iterations=5)
    res = run(space, PSO(), popcount_fraction, 0, instrument=True,
              callback=lambda t, pop, best: seen.append((t, best.fitness)))
    assert len(res.history) == 6
    assert [t for t, _ in seen] == [1, 2, 3, 4, 5]
    assert [f for _, f in seen] == res.trace.tolist()


def test_instrument_flag_from_environment(monkeypatch):
    space = SearchSpace(n_variables=3, n_agents=2, n_iterations=2)
    monkeypatch.setenv("HYPERFS_INSTRUMENT", "1")
    with pytest.raises(AssertionError):
        run(space, Escape(), popcount_fraction, 0)
    monkeypatch.setenv("HYPERFS_INSTRUMENT", "0")
    assert run(space, Escape(), popcount_fraction, 0).history is None


def test_coefficient_updates_scale_with_dimension():
    counts = {}
    for dim in (1, 4, 8):
        space = SearchSpace(n_variables=6, n_agents=5, n_iterations=3, space_dim=dim)
        counts[dim] = run(space, PSO(), popcount_fraction, 0).coefficient_updates
    assert counts[1].tolist() == [30, 30, 30]
    assert np.array_equal(counts[4], 4 * counts[1])
    assert np.array_equal(counts[8], 8 * counts[1])
