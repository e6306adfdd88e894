"""Dataset loading, linear normalization and seeded shuffling."""

import csv
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np


class DatasetParseError(ValueError):
    """A CSV file could not be read as a dataset; carries the location."""

    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.row = row
        self.column = column


@dataclass
class Dataset:
    """Feature matrix with optional integer reference labels."""

    features: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"
    label_names: list = field(default_factory=list)

    def __post_init__(self):
        self.features = np.atleast_2d(np.asarray(self.features, dtype=np.float64))
        if self.features.shape[0] < 1:
            raise ValueError("a dataset needs at least one sample")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
            if self.labels.shape[0] != self.features.shape[0]:
                raise ValueError("labels and features disagree on the number of samples")

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]


def _label_index(label_column, width):
    if label_column is None:
        return None
    if isinstance(label_column, str):
        if label_column.lower() == "last":
            return width - 1
        label_column = int(label_column)
    idx = label_column if label_column >= 0 else width + label_column
    if not 0 <= idx < width:
        raise DatasetParseError(f"label column {label_column} out of range", column=label_column)
    return idx


def load_csv(path, has_header=False, label_column="last", name=None):
    """Read a comma-separated file into a :class:`Dataset`.

    ``label_column`` is a column index (negative counts from the end),
    ``"last"``, or ``None`` for unlabeled data.  Label cells may be text;
    distinct labels become 0, 1, 2, ... in order of first appearance.
    Rows and columns in error messages are 1-based file positions.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1)
                if r and any(c.strip() for c in r)]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise DatasetParseError(f"{path} contains no data rows")
    width = len(rows[0][1])
    lab = _label_index(label_column, width)
    feats, raw_labels = [], []
    for lineno, r in rows:
        if len(r) != width:
            raise DatasetParseError(
                f"expected {width} fields, found {len(r)}", row=lineno, column=len(r))
        vals = []
        for c, cell in enumerate(r):
            if c == lab:
                raw_labels.append(cell.strip())
                continue
            try:
                vals.append(float(cell))
            except ValueError:
                raise DatasetParseError(
                    f"non-numeric feature {cell!r}", row=lineno, column=c + 1) from None
        feats.append(vals)
    if feats and not feats[0]:
        raise DatasetParseError(f"{path} has no feature columns")
    labels = None
    names = []
    if lab is not None:
        codes = {}
        labels = np.array([codes.setdefault(v, len(codes)) for v in raw_labels])
        names = list(codes)
    return Dataset(np.array(feats), labels, name or path.stem, names)


def linear_normalize(ds):
    """Min-max scale every feature to [0, 1]; constant features become 0."""
    X = ds.features
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    Xn = np.where(span > 0, (X - lo) / safe, 0.0)
    return replace(ds, features=np.clip(Xn, 0.0, 1.0))


def permutation(n, seed):
    """Platform-stable permutation of ``range(n)`` drawn from PCG64(seed)."""
    return np.random.Generator(np.random.PCG64(seed)).permutation(n)


def shuffle(ds, seed):
    """Reorder samples with a seeded permutation, keeping labels attached."""
    order = permutation(ds.n_samples, seed)
    return take(ds, order)


def take(ds, order):
    labels = None if ds.labels is None else ds.labels[order]
    return replace(ds, features=ds.features[order], labels=labels)


def make_spirals(n_samples=312, n_arms=3, turns=1.6, seed=None, noise=0.0):
    """Interleaved Archimedean spirals, ``n_samples // n_arms`` points per arm.

    Points are evenly spaced in angle from the center outward; optional
    Gaussian jitter is drawn from PCG64(seed).
    """
    per_arm = n_samples // n_arms
    t = np.linspace(0.15, 1.0, per_arm)
    X, y = [], []
    for k in range(n_arms):
        theta = 2 * np.pi * turns * t + 2 * np.pi * k / n_arms
        X.append(np.column_stack([t * np.cos(theta), t * np.sin(theta)]))
        y.append(np.full(per_arm, k))
    X = np.vstack(X)
    if noise:
        X = X + np.random.Generator(np.random.PCG64(seed)).normal(0, noise, X.shape)
    return Dataset(X, np.concatenate(y), "spiral")


BUILTIN = ("atom", "target", "spiral")


def load_builtin(name):
    """One of the bundled benchmark sets: ``atom``, ``target`` or ``spiral``."""
    key = name.lower()
    if key not in BUILTIN:
        raise KeyError(f"unknown builtin dataset {name!r}; choose from {BUILTIN}")
    with resources.as_file(resources.files("ddvfa") / "data" / f"{key}.csv") as p:
        return load_csv(p, has_header=True, label_column="last", name=key)


def load_atom():
    return load_builtin("atom")


def load_target():
    return load_builtin("target")


def load_spiral():
    return load_builtin("spiral")


def resolve(source, has_header=False, label_column="last"):
    """Load ``source`` as a builtin name if it is one, else as a CSV path."""
    if str(source).lower() in BUILTIN and not Path(source).exists():
        return load_builtin(str(source))
    return load_csv(source, has_header=has_header, label_column=label_column)
