"""Sufficient statistics for the discretization objectives.

The neighbor context flattens a target variable's Markov blanket into
per-row integer codes, aligned with the target's sorted sample order.  Count
tables over any contiguous interval of sorted rows are then cheap bincounts,
and interval sweeps can extend counts one row at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import DiscreteDataset, SortedColumn
from .errors import ValidationError
from .graph import Dag


@dataclass(frozen=True)
class ChildGroup:
    """Per-child flattened codes: child value and joint spouse instantiation."""

    name: str
    j_child: int
    spouses: tuple[str, ...]
    j_spouse: int
    child_codes: np.ndarray   # 0-based, sorted-row order
    spouse_codes: np.ndarray  # 0-based joint spouse codes

    @property
    def pair_codes(self) -> np.ndarray:
        return self.child_codes * self.j_spouse + self.spouse_codes


@dataclass(frozen=True)
class NeighborContext:
    n: int
    j_parent: int
    parent_codes: np.ndarray  # 0-based joint parent codes, sorted-row order
    children: list[ChildGroup]
    L: int


def _joint_codes(d_star: DiscreteDataset, names: list[str], perm: np.ndarray) -> tuple[np.ndarray, int]:
    """Mixed-radix encoding of the named columns, reordered by ``perm``."""
    n = len(perm)
    codes = np.zeros(n, dtype=np.int64)
    radix = 1
    for name in names:
        col = d_star.columns[name][perm]
        card = d_star.cardinalities[name]
        if np.any(col < 1) or np.any(col > card):
            raise ValidationError(f"column {name!r} has values outside 1..{card}")
        codes += (col - 1) * radix
        radix *= card
    return codes, radix


def build_context(d_star: DiscreteDataset, g: Dag, x: str, col: SortedColumn) -> NeighborContext:
    """Flatten x's Markov blanket into sorted-row codes.

    All variables other than ``x`` must be discrete in ``d_star`` and its rows
    must align with ``col.permutation``.
    """
    parents, children, spouses = g.neighbors_for_discretization(x)
    perm = col.permutation
    parent_codes, j_parent = _joint_codes(d_star, sorted(parents), perm)
    groups = []
    for child, spouse_set in zip(children, spouses):
        ccol = d_star.columns[child][perm]
        j_child = d_star.cardinalities[child]
        if np.any(ccol < 1) or np.any(ccol > j_child):
            raise ValidationError(f"column {child!r} has values outside 1..{j_child}")
        spouse_codes, j_spouse = _joint_codes(d_star, sorted(spouse_set), perm)
        groups.append(ChildGroup(child, j_child, tuple(sorted(spouse_set)),
                                 j_spouse, ccol - 1, spouse_codes))
    L = g.markov_blanket_max_cardinality(x)
    return NeighborContext(n=len(perm), j_parent=j_parent,
                           parent_codes=parent_codes, children=groups, L=L)


@dataclass(frozen=True)
class CountTable:
    """Counts over one interval of sorted rows."""

    parent_counts: np.ndarray                      # (J_P,)
    child_tables: list[np.ndarray]                 # (J_C, J_S) per child

    def spouse_marginals(self, j: int) -> np.ndarray:
        return self.child_tables[j].sum(axis=0)

    @property
    def gamma(self) -> int:
        return int(self.parent_counts.sum())


def interval_counts(ctx: NeighborContext, a: int, b: int) -> CountTable:
    """Counts over sorted rows ``a..b`` (1-based, inclusive)."""
    if not (1 <= a <= b <= ctx.n):
        raise ValidationError(f"invalid interval [{a},{b}] for n={ctx.n}")
    sl = slice(a - 1, b)
    parent_counts = np.bincount(ctx.parent_codes[sl], minlength=ctx.j_parent)
    tables = []
    for grp in ctx.children:
        flat = np.bincount(grp.pair_codes[sl], minlength=grp.j_child * grp.j_spouse)
        tables.append(flat.reshape(grp.j_child, grp.j_spouse))
    return CountTable(parent_counts, tables)
