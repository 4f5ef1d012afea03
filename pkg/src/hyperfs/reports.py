"""Artifact formats written by the CLI.

Every file starts with ``#`` comment lines carrying the schema name/version
and the fully resolved configuration as JSON, so a result can be re-derived
from its header alone. CSV readers skip those lines.

Files under the output directory:

* ``summary.csv``: dataset, algorithm, space, mean_acc, mean_feats,
  mean_time, mean_plain_acc, n_runs
* ``accuracy_runs.csv``: dataset, run, seed, then one column per technique
  holding that run's test accuracy (input of ``hyperfs stats``)
* ``runs.jsonl``: one RunRecord per line after a header record
* ``traces/<dataset>__<TECHNIQUE>__run<r>.csv``: iteration, best_fitness
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .config import SCHEMA_VERSION
from .selection import SUMMARY_COLUMNS
from .stats import best_technique, mark_best, wilcoxon_signed_rank

DECIMALS = 10


def fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.{DECIMALS}f}"
    return str(value)


def header_lines(schema: str, config_json: str, **extra) -> str:
    lines = [f"# schema: {schema} v{SCHEMA_VERSION}", f"# config: {config_json}"]
    lines += [f"# {k}: {v}" for k, v in extra.items()]
    return "\n".join(lines) + "\n"


def write_csv(path, schema: str, config_json: str, columns, rows, **extra) -> None:
    buf = io.StringIO()
    buf.write(header_lines(schema, config_json, **extra))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        values = [row[c] for c in columns] if isinstance(row, dict) else row
        writer.writerow([fmt(v) for v in values])
    Path(path).write_text(buf.getvalue())


def read_csv(path_or_text):
    """Rows (as dicts) of a CSV, ignoring ``#`` header lines."""
    if isinstance(path_or_text, (str, Path)) and Path(path_or_text).exists():
        text = Path(path_or_text).read_text()
    else:
        text = str(path_or_text)
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not body:
        raise ValueError("CSV is empty")
    reader = csv.DictReader(body)
    rows = list(reader)
    return reader.fieldnames, rows


def write_summary(path, config_json: str, summary_rows) -> None:
    write_csv(path, "hyperfs-summary", config_json, SUMMARY_COLUMNS, summary_rows)


def write_accuracy_matrix(path, config_json: str, dataset_batches: dict) -> None:
    """``dataset_batches``: ``{dataset: {technique: [RunRecord]}}``."""
    techniques = []
    for batch in dataset_batches.values():
        techniques += [t for t in batch if t not in techniques]
    columns = ["dataset", "run", "seed", *techniques]
    rows = []
    for name, batch in dataset_batches.items():
        n_runs = max(len(v) for v in batch.values())
        for r in range(n_runs):
            row = {"dataset": name, "run": r, "seed": next(iter(batch.values()))[r].seed}
            for t in techniques:
                recs = batch.get(t)
                row[t] = repr(recs[r].test_accuracy) if recs else ""
            rows.append(row)
    write_csv(path, "hyperfs-accuracy-runs", config_json, columns, rows)


def write_records(path, config_json: str, records) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps({"type": "header", "schema": f"hyperfs-runs v{SCHEMA_VERSION}",
                             "config": json.loads(config_json)}, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps({"type": "run", **rec.to_dict()}, sort_keys=True) + "\n")


def trace_filename(record, run_index: int) -> str:
    return f"{record.dataset}__{record.technique}__run{run_index:03d}.csv"


def write_trace(path, config_json: str, record) -> None:
    rows = [(t + 1, float(f)) for t, f in enumerate(record.trace)]
    write_csv(path, "hyperfs-trace", config_json, ("iteration", "best_fitness"), rows,
              dataset=record.dataset, technique=record.technique, seed=record.seed, fold=record.fold)


def mark_table(path_or_text):
    """Significance-marked rows from an accuracy-runs CSV.

    Each dataset is handled separately; returns dicts with dataset,
    technique, mean_acc, p_value (against the best technique) and bold.
    """
    columns, rows = read_csv(path_or_text)
    if not rows:
        raise ValueError("CSV has no data rows")
    meta = {"dataset", "run", "seed"}
    techniques = [c for c in columns if c not in meta]
    if not techniques:
        raise ValueError("CSV has no technique columns")
    datasets = []
    for row in rows:
        name = row.get("dataset", "")
        if name not in datasets:
            datasets.append(name)
    out = []
    for name in datasets:
        table = {}
        for t in techniques:
            try:
                vals = [float(r[t]) for r in rows if r.get("dataset", "") == name and r[t] not in ("", None)]
            except ValueError as exc:
                raise ValueError(f"non-numeric accuracy in column {t!r}: {exc}") from None
            if vals:
                table[t] = vals
        lengths = {len(v) for v in table.values()}
        if len(lengths) != 1:
            raise ValueError(f"dataset {name!r}: techniques have different run counts")
        bold = mark_best(table)
        best = best_technique(table)
        for t, vals in table.items():
            p = 1.0 if t == best else wilcoxon_signed_rank(vals, table[best]).p_value
            out.append({"dataset": name, "technique": t, "mean_acc": sum(vals) / len(vals),
                        "p_value": p, "bold": int(t in bold)})
    return out


MARKED_COLUMNS = ("dataset", "technique", "mean_acc", "p_value", "bold")
