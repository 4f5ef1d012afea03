"""Wrapper feature selection: OPF validation error as the objective.

One experiment run is split -> min-max scale (train statistics) -> optimize
on train/validation -> retrain OPF on the training partition with the best
mask -> score the test partition. The test partition never reaches the
objective.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import opf
from .algorithms import make_algorithm
from .binary import Bounds
from .config import ExperimentConfig
from .core import SearchSpace, run
from .data import Dataset, MinMaxScaler, protocol_split
from .hypercomplex import space_dim, space_token

SPACE_PREFIX = {1: "", 2: "C", 4: "Q", 8: "O"}


def technique_name(algorithm: str, dim: int) -> str:
    """``("cs", 4)`` -> ``"QCS"``."""
    return SPACE_PREFIX.get(dim, f"D{dim}") + algorithm.upper()


class WrapperObjective:
    """Maps a feature mask to ``1 - balanced accuracy`` on validation.

    An empty mask scores 1.0 without touching the classifier. Results are
    cached by mask bits; ``n_classifier_calls`` counts actual OPF fits.
    """

    def __init__(self, train: Dataset, validation: Dataset, cache: bool = True, use_numba=None):
        self.train = train
        self.validation = validation
        self.cache = {} if cache else None
        self.use_numba = use_numba
        self.n_classifier_calls = 0
        self._lock = threading.Lock()

    def __call__(self, mask) -> float:
        mask = np.asarray(mask, dtype=bool)
        if not mask.any():
            return 1.0
        key = mask.tobytes()
        if self.cache is not None and key in self.cache:
            return self.cache[key]
        with self._lock:
            self.n_classifier_calls += 1
        model = opf.train(self.train.samples, self.train.labels, mask, use_numba=self.use_numba)
        acc = opf.accuracy(model, self.validation.samples, self.validation.labels, mask,
                           use_numba=self.use_numba)
        fitness = 1.0 - acc
        if self.cache is not None:
            self.cache[key] = fitness
        return fitness

    evaluate = __call__


@dataclass
class RunRecord:
    dataset: str
    algorithm: str
    space: str
    seed: int
    fold: int
    test_accuracy: float
    test_plain_accuracy: float
    n_selected: int
    n_features: int
    best_fitness: float
    wall_time: float
    n_evaluations: int
    mask: str
    trace: list = field(default_factory=list)

    @property
    def technique(self) -> str:
        if self.algorithm == "baseline":
            return "BASELINE"
        return technique_name(self.algorithm, space_dim(self.space))

    def to_dict(self, with_time: bool = True) -> dict:
        d = asdict(self)
        if not with_time:
            d.pop("wall_time")
        return d


def _partitions(dataset: Dataset, seed: int, fold: int):
    split_seq, _ = np.random.SeedSequence(seed).spawn(2)
    train, val, test = protocol_split(dataset, int(split_seq.generate_state(1)[0]), fold)
    scaler = MinMaxScaler.fit(train)
    return scaler.transform(train), scaler.transform(val), scaler.transform(test)


def _optimizer_rng(seed: int) -> np.random.Generator:
    _, opt_seq = np.random.SeedSequence(seed).spawn(2)
    return np.random.Generator(np.random.PCG64(opt_seq))


def _test_scores(train: Dataset, test: Dataset, mask):
    model = opf.train(train.samples, train.labels, mask)
    pred = opf.classify(model, test.samples, mask)
    return opf.balanced_accuracy(test.labels, pred), opf.plain_accuracy(test.labels, pred)


def run_experiment(dataset: Dataset, algorithm: str, space, seed: int,
                   config: ExperimentConfig = ExperimentConfig(), fold: int = 0,
                   instrument: bool | None = None, callback=None) -> RunRecord:
    """One seeded optimization run; ``algorithm="baseline"`` skips the search."""
    dim = space_dim(space)
    train, val, test = _partitions(dataset, seed, fold)
    n = dataset.n_features
    if algorithm == "baseline":
        mask = np.ones(n, dtype=bool)
        objective = WrapperObjective(train, val)
        acc, plain = _test_scores(train, test, mask)
        return RunRecord(dataset.name, "baseline", space_token(dim), seed, fold, acc, plain, n, n,
                         objective(mask), 0.0, 1, "1" * n, [])

    space_ = SearchSpace(n_variables=n, n_agents=config.n_agents, n_iterations=config.n_iterations,
                         space_dim=dim, bounds=Bounds(config.lower, config.upper), p=config.p_norm)
    optimizer = make_algorithm(algorithm, **config.params.get(algorithm, {}))
    objective = WrapperObjective(train, val)
    start = time.perf_counter()
    result = run(space_, optimizer, objective, _optimizer_rng(seed), instrument=instrument,
                 callback=callback)
    elapsed = time.perf_counter() - start
    mask = result.best.mask
    acc, plain = _test_scores(train, test, mask)
    return RunRecord(dataset.name, algorithm, space_token(dim), seed, fold, acc, plain,
                     int(mask.sum()), n, result.best.fitness, elapsed, result.n_evaluations,
                     "".join("1" if b else "0" for b in mask), result.trace.tolist())


def run_baseline(dataset: Dataset, seed: int, fold: int = 0) -> RunRecord:
    return run_experiment(dataset, "baseline", "std", seed, fold=fold)


def _run_job(job):
    dataset, algorithm, space, seed, config, fold = job
    return run_experiment(dataset, algorithm, space, seed, config, fold)


def run_batch(dataset: Dataset, techniques, n_runs: int = 25, base_seed: int = 0,
              config: ExperimentConfig = ExperimentConfig(), jobs: int = 1) -> dict:
    """``{technique: [RunRecord] * n_runs}`` for ``(algorithm, space)`` pairs.

    Run ``r`` uses seed ``base_seed + r`` and fold ``r % 2`` for every
    technique, so records are paired by run across techniques. Results do
    not depend on ``jobs``.
    """
    techniques = [(a, space_token(space_dim(s))) for a, s in techniques]
    job_list = [(dataset, a, s, base_seed + r, config, r % 2) for a, s in techniques for r in range(n_runs)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            records = list(pool.map(_run_job, job_list))
    else:
        records = [_run_job(j) for j in job_list]
    out = {}
    for rec in records:
        out.setdefault(rec.technique, []).append(rec)
    return out


SUMMARY_COLUMNS = ("dataset", "algorithm", "space", "mean_acc", "mean_feats", "mean_time",
                   "mean_plain_acc", "n_runs")


def summarize(records) -> dict:
    """One summary row (mean accuracy, features, time) for a technique's records."""
    first = records[0]
    return {
        "dataset": first.dataset,
        "algorithm": first.algorithm,
        "space": first.space,
        "mean_acc": float(np.mean([r.test_accuracy for r in records])),
        "mean_feats": float(np.mean([r.n_selected for r in records])),
        "mean_time": float(np.mean([r.wall_time for r in records])),
        "mean_plain_acc": float(np.mean([r.test_plain_accuracy for r in records])),
        "n_runs": len(records),
    }
