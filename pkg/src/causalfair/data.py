"""Column-typed tabular data."""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import DataError, EmptyDataset, MissingVariable, SchemaMismatch

CONTINUOUS = "continuous"
CATEGORICAL = "categorical"
KINDS = (CONTINUOUS, CATEGORICAL)


class Dataset:
    """A table of continuous and categorical columns.

    Categorical columns hold integer codes ``0..L-1`` into ``levels[name]``.
    Optional non-negative row ``weights`` turn the table into a weighted
    sample; the fairness estimators use them to evaluate exact joint
    distributions (one row per configuration, weight = probability).

    Parameters
    ----------
    names : sequence of str
    values : array_like, shape (n, p)
    kinds : sequence of {"continuous", "categorical"}
    levels : mapping name -> tuple of labels, for categorical columns
    tiers, roles, mediator_kinds : mapping name -> annotation
    weights : array_like, shape (n,), optional
    """

    def __init__(
        self,
        names: Sequence[str],
        values,
        kinds: Sequence[str],
        levels: Optional[Mapping[str, Sequence]] = None,
        tiers: Optional[Mapping[str, int]] = None,
        roles: Optional[Mapping[str, str]] = None,
        mediator_kinds: Optional[Mapping[str, str]] = None,
        weights=None,
    ):
        names = tuple(names)
        values = np.asarray(values, dtype=float)
        if values.ndim == 1 and len(names) <= 1:
            values = values.reshape(-1, len(names))
        if values.ndim != 2 or values.shape[1] != len(names):
            raise DataError(f"values must have shape (n, {len(names)}), got {values.shape}")
        if values.shape[0] < 1:
            raise EmptyDataset("dataset has no rows")
        if len(set(names)) != len(names):
            raise DataError("duplicate column names")
        kinds = tuple(kinds)
        if len(kinds) != len(names) or any(k not in KINDS for k in kinds):
            raise DataError(f"kinds must be one of {KINDS} for every column")
        if not np.all(np.isfinite(values)):
            raise DataError("values contain NaN or infinite entries")
        levels = dict(levels or {})
        out_levels: Dict[str, Tuple[str, ...]] = {}
        for j, (name, kind) in enumerate(zip(names, kinds)):
            if kind != CATEGORICAL:
                continue
            col = values[:, j]
            if np.any(col != np.round(col)) or np.any(col < 0):
                raise DataError(f"categorical column {name!r} must hold non-negative integer codes")
            observed = int(col.max()) + 1
            labs = tuple(str(v) for v in levels.get(name, range(max(observed, 2))))
            if len(labs) < observed:
                raise DataError(f"column {name!r} has codes beyond its {len(labs)} levels")
            if len(labs) < 2:
                raise DataError(f"categorical column {name!r} needs at least 2 levels")
            out_levels[name] = labs
        if weights is not None:
            weights = np.asarray(weights, dtype=float)
            if weights.shape != (values.shape[0],) or np.any(weights < 0) or weights.sum() <= 0:
                raise DataError("weights must be non-negative, one per row, with positive sum")
            weights.setflags(write=False)
        values = values.copy()
        values.setflags(write=False)
        self._names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._values = values
        self._kinds = dict(zip(names, kinds))
        self._levels = out_levels
        self.tiers = dict(tiers or {})
        self.roles = dict(roles or {})
        self.mediator_kinds = dict(mediator_kinds or {})
        self.weights = weights

    # -- constructors ------------------------------------------------------

    @classmethod
    def continuous(cls, values, names: Optional[Sequence[str]] = None, **meta) -> "Dataset":
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if names is None:
            names = [f"X{i + 1}" for i in range(values.shape[1])]
        return cls(names, values, [CONTINUOUS] * len(names), **meta)

    @classmethod
    def categorical(cls, codes, names: Optional[Sequence[str]] = None, levels=None, **meta) -> "Dataset":
        codes = np.asarray(codes)
        if codes.ndim == 1:
            codes = codes[:, None]
        if names is None:
            names = [f"X{i + 1}" for i in range(codes.shape[1])]
        return cls(names, codes, [CATEGORICAL] * len(names), levels=levels, **meta)

    @classmethod
    def from_columns(cls, columns: Mapping[str, Iterable], kinds: Optional[Mapping[str, str]] = None, **meta) -> "Dataset":
        """Build from a name -> values mapping.

        Columns whose kind is categorical (explicitly, or because they hold
        non-numeric labels) are encoded in first-appearance order.
        """
        kinds = dict(kinds or {})
        names, cols, ks, levels = [], [], [], {}
        for name, col in columns.items():
            arr = np.asarray(list(col) if not isinstance(col, np.ndarray) else col)
            kind = kinds.get(name)
            if kind is None:
                kind = CONTINUOUS if np.issubdtype(arr.dtype, np.floating) else CATEGORICAL
            if kind == CATEGORICAL:
                codes, labs = encode_labels(arr)
                cols.append(codes)
                levels[name] = labs
            else:
                cols.append(arr.astype(float))
            names.append(name)
            ks.append(kind)
        n = len(cols[0]) if cols else 0
        values = np.column_stack(cols) if cols else np.zeros((n, 0))
        return cls(names, values, ks, levels=levels, **meta)

    # -- accessors -----------------------------------------------------------

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @property
    def p(self) -> int:
        return len(self._names)

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __contains__(self, name) -> bool:
        return name in self._index

    def _col_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MissingVariable(f"unknown variable {name!r}") from None

    def kind(self, name: str) -> str:
        self._col_index(name)
        return self._kinds[name]

    def is_continuous(self, name: str) -> bool:
        return self.kind(name) == CONTINUOUS

    def is_categorical(self, name: str) -> bool:
        return self.kind(name) == CATEGORICAL

    @property
    def all_continuous(self) -> bool:
        return all(k == CONTINUOUS for k in self._kinds.values())

    @property
    def all_categorical(self) -> bool:
        return all(k == CATEGORICAL for k in self._kinds.values())

    def column(self, name: str) -> np.ndarray:
        return self._values[:, self._col_index(name)]

    def codes(self, name: str) -> np.ndarray:
        if not self.is_categorical(name):
            raise DataError(f"{name!r} is not categorical")
        return self._values[:, self._col_index(name)].astype(np.intp)

    def levels(self, name: str) -> Tuple[str, ...]:
        if not self.is_categorical(name):
            raise DataError(f"{name!r} is not categorical")
        return self._levels[name]

    def n_levels(self, name: str) -> int:
        return len(self.levels(name))

    def code_of(self, name: str, label) -> int:
        labs = self.levels(name)
        try:
            return labs.index(str(label))
        except ValueError:
            raise DataError(f"{label!r} is not a level of {name!r} (levels: {list(labs)})") from None

    def matrix(self, names: Sequence[str]) -> np.ndarray:
        return self._values[:, [self._col_index(n) for n in names]]

    def row_weights(self) -> np.ndarray:
        return np.ones(self.n) if self.weights is None else np.asarray(self.weights)

    # -- derived datasets ----------------------------------------------------

    def _meta(self) -> dict:
        return dict(tiers=self.tiers, roles=self.roles, mediator_kinds=self.mediator_kinds, weights=self.weights)

    def select(self, names: Sequence[str]) -> "Dataset":
        return Dataset(
            names,
            self.matrix(names),
            [self._kinds[n] for n in names],
            levels={n: self._levels[n] for n in names if n in self._levels},
            **self._meta(),
        )

    def discretize(self, bins: int = 5, columns: Optional[Sequence[str]] = None) -> "Dataset":
        """Equal-frequency binning of continuous columns (all by default)."""
        if bins < 2:
            raise ValueError("bins must be at least 2")
        cols = [n for n in self._names if self._kinds[n] == CONTINUOUS] if columns is None else list(columns)
        values = self._values.copy()
        kinds = dict(self._kinds)
        levels = dict(self._levels)
        for name in cols:
            if kinds[name] != CONTINUOUS:
                continue
            j = self._index[name]
            codes = equal_frequency_codes(values[:, j], bins)
            used = np.unique(codes)
            remap = np.zeros(bins, dtype=np.intp)
            remap[used] = np.arange(len(used))
            values[:, j] = remap[codes]
            levels[name] = tuple(f"q{i}" for i in range(max(len(used), 2)))
            kinds[name] = CATEGORICAL
        return Dataset(self._names, values, [kinds[n] for n in self._names], levels=levels, **self._meta())

    def __repr__(self) -> str:
        cols = ", ".join(f"{n}:{self._kinds[n][:4]}" for n in self._names)
        return f"Dataset(n={self.n}, [{cols}])"


def encode_labels(arr) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """Integer codes in first-appearance order plus the label tuple."""
    labels: Dict[str, int] = {}
    codes = np.empty(len(arr), dtype=np.intp)
    for i, v in enumerate(arr):
        key = _label(v)
        codes[i] = labels.setdefault(key, len(labels))
    labs = tuple(labels)
    if len(labs) < 2:
        labs = labs + ("__unobserved__",)
    return codes, labs


def _label(v) -> str:
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return str(int(v))
    return str(v)


def equal_frequency_codes(x, bins: int) -> np.ndarray:
    """Bin index of each value under equal-frequency (quantile) binning.

    Tied quantile edges collapse, so a constant column maps to one bin.
    """
    x = np.asarray(x, dtype=float)
    edges = np.quantile(x, np.linspace(0.0, 1.0, bins + 1)[1:-1])
    edges = np.unique(edges)
    return np.searchsorted(edges, x, side="right").astype(np.intp)


def check_schema_names(dataset: Dataset, names: Iterable[str]) -> None:
    missing = [n for n in names if n not in dataset]
    if missing:
        raise SchemaMismatch(f"variables not in dataset: {missing}")
