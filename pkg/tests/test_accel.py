import os
import subprocess
import sys

import numpy as np
import pytest

from hyperfs import _accel, opf


@pytest.mark.skipif(not _accel.HAS_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("seed", range(5))
def test_backends_bit_identical(seed):
    rng = np.random.default_rng(seed)
    n, d = int(rng.integers(5, 80)), int(rng.integers(1, 20))
    X = np.round(rng.random((n, d)), 2)  # rounding creates distance ties
    y = rng.integers(1, 4, n)
    y[:2] = [1, 2]
    Q = np.round(rng.random((50, d)), 2)
    mask = rng.random(d) < 0.7
    mask[0] = True
    a = opf.train(X, y, mask, use_numba=True)
    b = opf.train(X, y, mask, use_numba=False)
    for field in ("labels", "sq_costs", "predecessor", "ordered_nodes", "prototypes"):
        assert np.array_equal(getattr(a, field), getattr(b, field)), field
    assert np.array_equal(opf.classify(a, Q, use_numba=True), opf.classify(b, Q, use_numba=False))


def test_disable_flag_selects_numpy():
    code = "from hyperfs import _accel; print(_accel.backend())"
    env = dict(os.environ, HYPERFS_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_wrapper_fitness_same_on_both_backends(wine):
    from hyperfs.selection import run_experiment
    from hyperfs.config import ExperimentConfig

    cfg = ExperimentConfig(n_agents=4, n_iterations=3)
    rec = run_experiment(wine, "pso", "quat", 1, cfg)
    code = ("from hyperfs.data import load_dataset; from hyperfs.selection import run_experiment;"
            "from hyperfs.config import ExperimentConfig;"
            "r = run_experiment(load_dataset('wine'), 'pso', 'quat', 1, ExperimentConfig(n_agents=4, n_iterations=3));"
            "print(repr(r.best_fitness), r.mask, repr(r.test_accuracy))")
    env = dict(os.environ, HYPERFS_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [repr(rec.best_fitness), rec.mask, repr(rec.test_accuracy)]
