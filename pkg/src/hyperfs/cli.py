"""Command line entry point: ``hyperfs run | stats | baseline``."""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import reports
from .config import ExperimentConfig, load_config
from .data import DatasetError, load_dataset
from .selection import run_baseline, run_batch, summarize

log = logging.getLogger("hyperfs")


def _split_list(values):
    if not values:
        return None
    out = []
    for v in values:
        out += [s.strip() for s in v.split(",") if s.strip()]
    return tuple(out)


def _parse_params(items):
    """``cs.alpha=0.5`` -> ``{"cs": {"alpha": 0.5}}``."""
    params = {}
    for item in items or ():
        key, sep, raw = item.partition("=")
        algo, dot, name = key.partition(".")
        if not sep or not dot:
            raise ValueError(f"--param expects ALGO.NAME=VALUE, got {item!r}")
        params.setdefault(algo.lower(), {})[name] = json.loads(raw)
    return params


def _config_from_args(args) -> ExperimentConfig:
    flags = dict(
        datasets=_split_list(args.dataset), algorithms=_split_list(args.algo), spaces=_split_list(args.space),
        n_runs=args.runs, n_agents=args.agents, n_iterations=args.iters, seed=args.seed,
        p_norm=args.p_norm, lower=args.lower, upper=args.upper, jobs=args.jobs, out=args.out,
    )
    cfg = load_config(args.config, **flags)
    extra = _parse_params(args.param)
    if extra:
        merged = {k: dict(v) for k, v in cfg.params.items()}
        for algo, values in extra.items():
            merged.setdefault(algo, {}).update(values)
        cfg = cfg.merge({"params": merged})
    return cfg


def cmd_run(cfg: ExperimentConfig) -> int:
    if not cfg.datasets:
        raise ValueError("no dataset given (--dataset or config 'datasets')")
    datasets = [load_dataset(src) for src in cfg.datasets]
    out = Path(cfg.out)
    (out / "traces").mkdir(parents=True, exist_ok=True)
    config_json = cfg.to_json()
    techniques = [(a, s) for a in cfg.algorithms for s in cfg.spaces]

    batches, summary, records = {}, [], []
    for ds in datasets:
        log.info("dataset %s: %d samples, %d features", ds.name, ds.n_samples, ds.n_features)
        batch = run_batch(ds, techniques, cfg.n_runs, cfg.seed, cfg, jobs=cfg.jobs)
        batches[ds.name] = batch
        for technique, recs in batch.items():
            row = summarize(recs)
            summary.append(row)
            log.info("%s %s: acc %.4f feats %.2f", ds.name, technique, row["mean_acc"], row["mean_feats"])
            for r, rec in enumerate(recs):
                records.append(rec)
                reports.write_trace(out / "traces" / reports.trace_filename(rec, r), config_json, rec)

    reports.write_summary(out / "summary.csv", config_json, summary)
    reports.write_accuracy_matrix(out / "accuracy_runs.csv", config_json, batches)
    reports.write_records(out / "runs.jsonl", config_json, records)
    print(f"wrote {len(summary)} summary rows and {len(records)} runs to {out}")
    return 0


def cmd_stats(path, out=None) -> int:
    if not Path(path).exists():
        raise FileNotFoundError(f"no such file: {path}")
    rows = reports.mark_table(path)
    buf = io.StringIO()
    buf.write("# schema: hyperfs-marked v1\n")
    buf.write(",".join(reports.MARKED_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(reports.fmt(row[c]) for c in reports.MARKED_COLUMNS) + "\n")
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_baseline(dataset, seed: int = 0, runs: int = 1, out=None) -> int:
    ds = load_dataset(dataset)
    recs = [run_baseline(ds, seed + r, fold=r % 2) for r in range(runs)]
    cfg = {"dataset": str(dataset), "seed": seed, "runs": runs}
    columns = ("dataset", "seed", "fold", "accuracy", "plain_accuracy", "n_selected", "n_features")
    rows = [{"dataset": r.dataset, "seed": r.seed, "fold": r.fold, "accuracy": r.test_accuracy,
             "plain_accuracy": r.test_plain_accuracy, "n_selected": r.n_selected, "n_features": r.n_features}
            for r in recs]
    rows.append({"dataset": ds.name, "seed": "mean", "fold": "",
                 "accuracy": float(np.mean([r.test_accuracy for r in recs])),
                 "plain_accuracy": float(np.mean([r.test_plain_accuracy for r in recs])),
                 "n_selected": float(np.mean([r.n_selected for r in recs])), "n_features": ds.n_features})
    text_path = Path(out) if out else None
    if text_path is None:
        buf = io.StringIO()
        buf.write(reports.header_lines("hyperfs-baseline", json.dumps(cfg, sort_keys=True)))
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(reports.fmt(row[c]) for c in columns) + "\n")
        sys.stdout.write(buf.getvalue())
    else:
        reports.write_csv(text_path, "hyperfs-baseline", json.dumps(cfg, sort_keys=True), columns, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperfs", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the optimization protocol and write result artifacts")
    p.add_argument("--config", help="JSON config document; flags override it")
    p.add_argument("--dataset", action="append", help="bundled name (wine, sonar) or file path; repeatable")
    p.add_argument("--algo", action="append", help="abc|aiwpso|ba|cs|fa|fpa|pso; repeatable or comma separated")
    p.add_argument("--space", action="append", help="std|quat|oct; repeatable or comma separated")
    p.add_argument("--runs", type=int)
    p.add_argument("--agents", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--p-norm", type=float)
    p.add_argument("--lower", type=float)
    p.add_argument("--upper", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out")
    p.add_argument("--param", action="append", metavar="ALGO.NAME=VALUE", help="algorithm parameter override")

    p = sub.add_parser("stats", help="mark techniques tied with the best (Wilcoxon, 5%%)")
    p.add_argument("results", help="accuracy_runs.csv written by 'run'")
    p.add_argument("--out", help="write the marked table here instead of stdout")

    p = sub.add_parser("baseline", help="OPF on all features, no optimization")
    p.add_argument("--dataset", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "run":
            return cmd_run(_config_from_args(args))
        if args.command == "stats":
            return cmd_stats(args.results, args.out)
        return cmd_baseline(args.dataset, args.seed, args.runs, args.out)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"hyperfs: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
