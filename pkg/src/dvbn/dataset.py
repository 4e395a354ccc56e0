"""Mixed tabular data ingestion and sorted per-column views.

A :class:`MixedDataset` holds discrete columns as integer codes in
``1..cardinality`` and continuous columns as floats.  Rows containing any
missing cell are dropped at load time and the drop count is recorded.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, ValidationError

MISSING_TOKENS = {"", "?", "NA", "NaN", "nan", "na"}

#: discrete cardinalities above this trigger a warning (joint instantiation
#: tables grow multiplicatively with neighbor cardinalities)
MAX_CARDINALITY_WARNING = 20


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "continuous" | "discrete"
    cardinality: int | None = None

    def __post_init__(self):
        if self.kind not in ("continuous", "discrete"):
            raise ValidationError(f"unknown variable kind {self.kind!r}")


@dataclass
class MixedDataset:
    """Rows of mixed continuous/discrete cells with provenance."""

    variables: list[Variable]
    columns: dict[str, np.ndarray]
    source: str = "<memory>"
    n_dropped: int = 0
    label_maps: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values())))

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise ValidationError(f"no variable named {name!r}")

    def is_continuous(self, name: str) -> bool:
        return self.variable(name).kind == "continuous"

    def continuous_names(self) -> list[str]:
        return [v.name for v in self.variables if v.kind == "continuous"]

    def discrete_names(self) -> list[str]:
        return [v.name for v in self.variables if v.kind == "discrete"]

    def subset_rows(self, idx: np.ndarray) -> "MixedDataset":
        cols = {k: v[idx] for k, v in self.columns.items()}
        return MixedDataset(self.variables, cols, source=self.source,
                            n_dropped=self.n_dropped, label_maps=self.label_maps)

    def canonical_json(self) -> str:
        """Deterministic serialization used by the round-trip tests."""
        obj = {
            "variables": [
                {"name": v.name, "kind": v.kind, "cardinality": v.cardinality}
                for v in self.variables
            ],
            "n_dropped": self.n_dropped,
            "label_maps": {k: dict(sorted(m.items())) for k, m in self.label_maps.items()},
            "rows": [
                [
                    (int(self.columns[v.name][i]) if v.kind == "discrete"
                     else float(self.columns[v.name][i]))
                    for v in self.variables
                ]
                for i in range(self.n_rows)
            ],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class DiscreteDataset:
    """Fully discrete image of a dataset; codes in ``1..cardinality``."""

    columns: dict[str, np.ndarray]
    cardinalities: dict[str, int]

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values())))

    def replace_column(self, name: str, values: np.ndarray, cardinality: int) -> "DiscreteDataset":
        cols = dict(self.columns)
        cols[name] = values
        cards = dict(self.cardinalities)
        cards[name] = cardinality
        return DiscreteDataset(cols, cards)


@dataclass(frozen=True)
class SortedColumn:
    """One continuous column sorted ascending with unique-value bookkeeping.

    ``last_occurrence`` holds 1-based indices into ``values``: the position of
    the final occurrence of each unique value.  ``permutation[p]`` is the
    original row index of sorted position ``p``.
    """

    values: np.ndarray
    uniques: np.ndarray
    last_occurrence: np.ndarray
    permutation: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.uniques)


def load_schema(path: str) -> list[dict]:
    with open(path) as f:
        doc = json.load(f)
    if "columns" not in doc:
        raise DataError(f"schema {path}: missing 'columns'")
    return doc["columns"]


def infer_schema(header: list[str], rows: list[list[str]],
                 max_discrete_levels: int = 20) -> list[dict]:
    """Heuristic: a column is discrete iff it has few distinct, all-integral values."""
    cols = []
    for j, name in enumerate(header):
        cells = [r[j] for r in rows if r[j] not in MISSING_TOKENS]
        integral = True
        for c in cells:
            try:
                x = float(c)
            except ValueError:
                integral = True  # categorical labels count as discrete
                break
            if x != int(x):
                integral = False
                break
        kind = "discrete" if integral and len(set(cells)) <= max_discrete_levels else "continuous"
        cols.append({"name": name, "kind": kind})
    return cols


def load_csv(path: str, schema: list[dict] | None = None,
             max_discrete_levels: int = 20) -> MixedDataset:
    """Read a headered CSV, drop incomplete rows, and code discrete columns.

    Categorical labels are mapped to ``1..cardinality`` in lexicographic label
    order; the mapping is recorded in ``label_maps``.
    """
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file")
        raw_rows = [row for row in reader if row]

    header = [h.strip() for h in header]
    if schema is None:
        schema = infer_schema(header, raw_rows, max_discrete_levels)

    names = [c["name"] for c in schema]
    for name in names:
        if name not in header:
            raise DataError(f"{path}: schema column {name!r} not found in header")
    kinds = {c["name"]: c["kind"] for c in schema}
    col_idx = {name: header.index(name) for name in names}

    kept, n_dropped = [], 0
    for row in raw_rows:
        cells = [row[col_idx[name]].strip() for name in names]
        if any(c in MISSING_TOKENS for c in cells):
            n_dropped += 1
        else:
            kept.append(cells)
    if not kept:
        raise DataError(f"{path}: no complete rows after dropping missing data")

    variables: list[Variable] = []
    columns: dict[str, np.ndarray] = {}
    label_maps: dict[str, dict[str, int]] = {}
    for j, name in enumerate(names):
        cells = [r[j] for r in kept]
        if kinds[name] == "continuous":
            vals = np.empty(len(cells))
            for i, c in enumerate(cells):
                try:
                    vals[i] = float(c)
                except ValueError:
                    raise DataError(f"{path}: row {i + 1}, column {name!r}: "
                                    f"cannot parse {c!r} as a real number")
                if not np.isfinite(vals[i]):
                    raise DataError(f"{path}: row {i + 1}, column {name!r}: non-finite value")
            variables.append(Variable(name, "continuous"))
            columns[name] = vals
        else:
            labels = sorted(set(cells))
            mapping = {lab: i + 1 for i, lab in enumerate(labels)}
            columns[name] = np.array([mapping[c] for c in cells], dtype=np.int64)
            variables.append(Variable(name, "discrete", len(labels)))
            label_maps[name] = mapping
            if len(labels) > MAX_CARDINALITY_WARNING:
                warnings.warn(
                    f"{path}: discrete column {name!r} has {len(labels)} levels; "
                    f"joint count tables may be very large", stacklevel=2)

    return MixedDataset(variables, columns, source=path,
                        n_dropped=n_dropped, label_maps=label_maps)


def sorted_view(d: MixedDataset, var: str) -> SortedColumn:
    """Sorted ascending view of a continuous column with unique bookkeeping."""
    if not d.is_continuous(var):
        raise ValidationError(f"{var!r} is not a continuous variable")
    return sorted_column(d.columns[var])


def sorted_column(raw: np.ndarray) -> SortedColumn:
    """Build a :class:`SortedColumn` from raw values (stable under ties)."""
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 1 or len(raw) == 0:
        raise ValidationError("column must be a nonempty 1-d array")
    perm = np.argsort(raw, kind="stable")
    values = raw[perm]
    n = len(values)
    is_last = np.empty(n, dtype=bool)
    is_last[:-1] = values[1:] > values[:-1]
    is_last[-1] = True
    last_occurrence = np.nonzero(is_last)[0] + 1  # 1-based
    uniques = values[last_occurrence - 1]
    return SortedColumn(values=values, uniques=uniques,
                        last_occurrence=last_occurrence, permutation=perm)
