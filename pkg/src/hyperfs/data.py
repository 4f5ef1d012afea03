"""Dataset loading, the 25/25/50 split protocol and min-max scaling."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

BUNDLED = ("wine", "sonar")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    samples: np.ndarray
    labels: np.ndarray
    name: str = "dataset"
    # original label value for each remapped class 1..C
    classes: tuple = field(default=())

    def __post_init__(self):
        if self.samples.ndim != 2:
            raise DatasetError("samples must be a 2-D matrix")
        if self.samples.shape[0] != self.labels.shape[0]:
            raise DatasetError(f"{self.samples.shape[0]} samples but {self.labels.shape[0]} labels")
        if self.samples.shape[1] < 1:
            raise DatasetError("dataset needs at least one feature")
        if np.isnan(self.samples).any():
            raise DatasetError("dataset contains missing values")

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def n_features(self) -> int:
        return self.samples.shape[1]

    @property
    def n_classes(self) -> int:
        return int(np.unique(self.labels).size)

    def subset(self, index) -> "Dataset":
        return replace(self, samples=self.samples[index], labels=self.labels[index])


def _remap(raw_labels, samples, name) -> Dataset:
    raw = np.asarray(raw_labels)
    classes, labels = np.unique(raw, return_inverse=True)
    return Dataset(samples=np.asarray(samples, dtype=np.float64), labels=labels.astype(np.int64) + 1,
                   name=name, classes=tuple(classes.tolist()))


def _number(token, lineno, what):
    try:
        return float(token)
    except ValueError:
        raise DatasetError(f"line {lineno}: non-numeric {what} {token!r}") from None


def parse_libsvm(stream, n_features: int | None = None, name: str = "dataset") -> Dataset:
    """Parse ``label index:value ...`` lines (1-based sparse indices).

    Absent indices are zero. Labels are remapped to ``1..C`` in sorted order
    of the original values, which stay available in ``Dataset.classes``.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    labels, rows = [], []
    width = 0
    for lineno, line in enumerate(stream, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        labels.append(_number(tokens[0], lineno, "label"))
        row = {}
        for tok in tokens[1:]:
            idx, sep, val = tok.partition(":")
            if not sep or not idx:
                raise DatasetError(f"line {lineno}: malformed entry {tok!r}")
            try:
                i = int(idx)
            except ValueError:
                raise DatasetError(f"line {lineno}: non-integer index {idx!r}") from None
            if i < 1:
                raise DatasetError(f"line {lineno}: index {i} is not 1-based")
            row[i] = _number(val, lineno, "value")
            width = max(width, i)
        rows.append(row)
    if not rows:
        raise DatasetError("no samples found")
    if n_features is not None:
        if n_features < width:
            raise DatasetError(f"index {width} exceeds declared feature count {n_features}")
        width = n_features
    X = np.zeros((len(rows), width))
    for r, row in enumerate(rows):
        for i, v in row.items():
            X[r, i - 1] = v
    labels = [int(v) if float(v).is_integer() else v for v in labels]
    return _remap(labels, X, name)


def write_libsvm(ds: Dataset, stream) -> None:
    """Inverse of :func:`parse_libsvm`; zeros are elided."""
    originals = ds.classes or tuple(range(1, ds.n_classes + 1))
    for x, y in zip(ds.samples, ds.labels):
        entries = " ".join(f"{i + 1}:{v!r}" for i, v in enumerate(x.tolist()) if v != 0)
        stream.write(f"{originals[y - 1]} {entries}".rstrip() + "\n")


def parse_csv(stream, name: str = "dataset") -> Dataset:
    """CSV with a header row and the class label in the first column."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        raise DatasetError("empty CSV")
    labels, rows = [], []
    for lineno, rec in enumerate(reader, 2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise DatasetError(f"line {lineno}: expected {len(header)} columns, got {len(rec)}")
        labels.append(rec[0])
        rows.append([_number(v, lineno, "value") for v in rec[1:]])
    if not rows:
        raise DatasetError("no samples found")
    return _remap(labels, np.array(rows), name)


def load_dataset(source) -> Dataset:
    """Load a bundled dataset by name or a ``.csv`` / LibSVM file by path."""
    path = Path(source)
    if path.exists():
        with open(path) as fh:
            if path.suffix.lower() == ".csv":
                return parse_csv(fh, name=path.stem)
            return parse_libsvm(fh, name=path.stem)
    key = str(source).lower()
    if key in BUNDLED:
        text = resources.files("hyperfs.datasets").joinpath(f"{key}.libsvm").read_text()
        return parse_libsvm(text, name=key)
    raise DatasetError(f"dataset not found: {source}")


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.25
    validation_fraction: float = 0.25
    test_fraction: float = 0.50
    stratified: bool = True

    def __post_init__(self):
        total = self.train_fraction + self.validation_fraction + self.test_fraction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"split fractions must sum to 1, got {total}")


def _allocate(n, fractions):
    # largest-remainder rounding; ties go to the earlier partition
    raw = np.array(fractions) * n
    counts = np.floor(raw).astype(int)
    order = np.argsort(-(raw - counts), kind="stable")
    counts[order[: n - counts.sum()]] += 1
    return counts


def _stratified_counts(class_sizes, fractions):
    """Per-class partition sizes whose column sums hit the global targets.

    Every cell is the floor or the ceiling of its exact share. Starting from
    the floors, each class hands out its missing samples one at a time along
    augmenting paths (a bipartite b-matching), so a greedy choice made for an
    earlier class never blocks a later one.
    """
    targets = _allocate(int(sum(class_sizes)), fractions)
    raw = np.outer(class_sizes, fractions)
    counts = np.floor(raw).astype(int)
    frac = raw - counts
    extra = np.zeros_like(counts)
    room = targets - counts.sum(axis=0)
    n_parts = len(fractions)

    def augment(c, seen):
        for p in np.argsort(-frac[c], kind="stable"):
            if frac[c, p] <= 0 or extra[c, p] or seen[p]:
                continue
            seen[p] = True
            if room[p] > 0:
                room[p] -= 1
                extra[c, p] = 1
                return True
            for other in np.flatnonzero(extra[:, p]):
                if augment(other, seen):
                    extra[other, p] = 0
                    extra[c, p] = 1
                    return True
        return False

    for c, size in enumerate(class_sizes):
        for _ in range(int(size - counts[c].sum())):
            if not augment(c, np.zeros(n_parts, dtype=bool)):
                raise RuntimeError("no consistent stratified allocation")
    return counts + extra


def split_indices(labels, spec: SplitSpec, rng: np.random.Generator):
    labels = np.asarray(labels)
    fractions = (spec.train_fraction, spec.validation_fraction, spec.test_fraction)
    parts = [[], [], []]
    if spec.stratified:
        classes, sizes = np.unique(labels, return_counts=True)
        for c, size in zip(classes, sizes):
            if size < 4:
                raise DatasetError(f"class {c} has {size} samples; stratified split needs at least 4")
        counts = _stratified_counts(sizes, fractions)
        for c, row in zip(classes, counts):
            idx = rng.permutation(np.flatnonzero(labels == c))
            for part, chunk in zip(parts, np.split(idx, np.cumsum(row)[:-1])):
                part.append(chunk)
    else:
        idx = rng.permutation(labels.size)
        for part, chunk in zip(parts, np.split(idx, np.cumsum(_allocate(idx.size, fractions))[:-1])):
            part.append(chunk)
    return tuple(np.sort(np.concatenate(p)) for p in parts)


def split(ds: Dataset, spec: SplitSpec = SplitSpec(), rng: np.random.Generator = None):
    """Seeded train/validation/test partition (stratified by default).

    Stratified sizes are allocated per class, so each partition holds its
    class share to within one sample.
    """
    if rng is None:
        rng = np.random.default_rng()
    train, val, test = split_indices(ds.labels, spec, rng)
    return ds.subset(train), ds.subset(val), ds.subset(test)


def protocol_split(ds: Dataset, seed: int, fold: int = 0, spec: SplitSpec = SplitSpec()):
    """The per-run split of the experiment protocol.

    Each run draws a fresh 25/25/50 split from its seed. The non-test half is
    treated as two folds: on odd folds the training and validation roles are
    swapped.
    """
    train, val, test = split(ds, spec, np.random.default_rng(seed))
    if fold % 2:
        train, val = val, train
    return train, val, test


@dataclass(frozen=True)
class MinMaxScaler:
    minimum: np.ndarray
    span: np.ndarray

    @classmethod
    def fit(cls, ds: Dataset) -> "MinMaxScaler":
        lo = ds.samples.min(axis=0)
        return cls(minimum=lo, span=ds.samples.max(axis=0) - lo)

    def transform(self, ds: Dataset) -> Dataset:
        safe = np.where(self.span > 0, self.span, 1.0)
        X = np.where(self.span > 0, (ds.samples - self.minimum) / safe, 0.0)
        return replace(ds, samples=X)


def normalize(ds: Dataset, reference: Dataset | None = None) -> Dataset:
    """Min-max scale ``ds`` with statistics from ``reference`` (default: itself).

    Constant features map to 0. Pass the training partition as ``reference``
    when scaling validation/test data.
    """
    return MinMaxScaler.fit(reference if reference is not None else ds).transform(ds)
