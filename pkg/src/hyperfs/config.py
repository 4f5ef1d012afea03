"""Experiment configuration: defaults < JSON file < ``HYPERFS_*`` env < flags."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields, replace

from .algorithms import ALGORITHMS
from .hypercomplex import SPACE_TOKENS

SCHEMA_VERSION = 1
ENV_PREFIX = "HYPERFS_"


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple = ()
    algorithms: tuple = tuple(sorted(ALGORITHMS))
    spaces: tuple = ("std", "quat", "oct")
    n_runs: int = 25
    n_agents: int = 15
    n_iterations: int = 25
    lower: float = -20.0
    upper: float = 20.0
    p_norm: float = 2.0
    seed: int = 0
    jobs: int = 1
    out: str = "results"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")
        for token in self.spaces:
            if token not in SPACE_TOKENS:
                raise ValueError(f"unknown space {token!r}")
        for name in self.params:
            if name not in ALGORITHMS:
                raise ValueError(f"parameter overrides for unknown algorithm {name!r}")
        if self.n_runs < 1 or self.n_agents < 1 or self.n_iterations < 1 or self.jobs < 1:
            raise ValueError("runs, agents, iterations and jobs must be >= 1")
        if not self.lower < self.upper:
            raise ValueError("lower bound must be below upper bound")
        if not self.p_norm >= 1:
            raise ValueError("p-norm order must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["datasets"] = list(self.datasets)
        d["algorithms"] = list(self.algorithms)
        d["spaces"] = list(self.spaces)
        return d

    def to_json(self) -> str:
        return json.dumps({"schema": SCHEMA_VERSION, **self.to_dict()}, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        return cls().merge(data)

    def merge(self, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(self)}
        extra = set(data) - known - {"schema"}
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        updates = {k: (tuple(v) if isinstance(v, list) else v) for k, v in data.items()
                   if k in known and v is not None}
        return replace(self, **updates)


_LIST_KEYS = {"datasets", "algorithms", "spaces"}


def env_overrides(environ=None) -> dict:
    """``HYPERFS_RUNS=5`` style overrides; list values are comma separated."""
    environ = os.environ if environ is None else environ
    out = {}
    types = {f.name: f.type for f in fields(ExperimentConfig)}
    aliases = {"runs": "n_runs", "agents": "n_agents", "iters": "n_iterations", "p": "p_norm"}
    for key, raw in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        name = aliases.get(name, name)
        if name not in types or name == "params":
            continue
        if name in _LIST_KEYS:
            out[name] = tuple(s.strip() for s in raw.split(",") if s.strip())
        elif types[name] == "int":
            out[name] = int(raw)
        elif types[name] == "float":
            out[name] = float(raw)
        else:
            out[name] = raw
    return out


def load_config(path=None, environ=None, **flags) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if path:
        with open(path) as fh:
            cfg = cfg.merge(json.load(fh))
    cfg = cfg.merge(env_overrides(environ))
    return cfg.merge({k: v for k, v in flags.items() if v is not None})
