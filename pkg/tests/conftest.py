"""Shared fixtures and random-instance generators for the test suite."""

from __future__ import annotations

import os

import numpy as np
import pytest

from dvbn.dataset import DiscreteDataset, MixedDataset, Variable, sorted_column
from dvbn.graph import Dag
from dvbn.policy import DiscretizationPolicy, midpoint_candidates

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


def random_instance(seed: int, n_max: int = 16, m_max: int = 12,
                    levels_max: int = 3):
    """Small random target column with a random discrete Markov blanket.

    Layouts cycle through: parent only, child only, parent + child, and
    child + spouse, so instances occur with and without spouses.  Returns
    ``(d_star, graph, sorted_column)``; the target's own column in ``d_star``
    is a placeholder and is never read by the discretizers.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, n_max + 1))
    grid = np.unique(np.round(rng.normal(0.0, 1.0, int(rng.integers(2, m_max + 1))), 3))
    x = rng.choice(grid, size=n)
    while len(np.unique(x)) < 2:
        x = rng.choice(grid, size=n)

    layout = seed % 4
    names = {0: ["P"], 1: ["C"], 2: ["P", "C"], 3: ["C", "S"]}[layout]
    edge_spec = {0: [("P", "X")], 1: [("X", "C")],
                 2: [("P", "X"), ("X", "C")],
                 3: [("X", "C"), ("S", "C")]}[layout]

    cols = {"X": np.ones(n, dtype=np.int64)}
    cards = {"X": 1}
    for name in names:
        card = int(rng.integers(2, levels_max + 1))
        cols[name] = rng.integers(1, card + 1, size=n).astype(np.int64)
        cards[name] = card
    g = Dag({name: (None if name == "X" else cards[name]) for name in cols})
    for p, c in edge_spec:
        g = g.add_edge(p, c)
    return DiscreteDataset(cols, cards), g, sorted_column(x)


def random_policy(seed: int, col) -> DiscretizationPolicy:
    """Random subset of the midpoint candidates as a policy."""
    rng = np.random.default_rng(seed)
    mids = midpoint_candidates(col)
    take = rng.random(len(mids)) < 0.4
    edges = tuple(float(e) for e in mids[take])
    return DiscretizationPolicy(edges, float(col.values[0]), float(col.values[-1]))


def random_mixed(seed: int, n_max: int = 14):
    """Small mixed dataset plus a structure over it, for pipeline tests."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(6, n_max + 1))
    a = rng.integers(1, 3, size=n).astype(np.int64)
    x = np.round(a + rng.normal(0, 0.5, n), 2)
    y = np.round(rng.normal(0, 1.0, n), 2)
    b = ((x > np.median(x)).astype(np.int64) + 1)
    d = MixedDataset(
        [Variable("A", "discrete", 2), Variable("X", "continuous"),
         Variable("Y", "continuous"), Variable("B", "discrete", 2)],
        {"A": a, "X": x, "Y": y, "B": b})
    g = Dag({"A": 2, "X": None, "Y": None, "B": 2})
    g = g.add_edge("A", "X")
    g = g.add_edge("X", "B")
    g = g.add_edge("Y", "B")
    return d, g
