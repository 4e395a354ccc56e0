import math

import numpy as np
import pytest

from conftest import random_instance, random_policy
from dvbn.counts import build_context
from dvbn.dataset import DiscreteDataset, sorted_column
from dvbn.errors import ValidationError
from dvbn.graph import Dag
from dvbn.policy import DiscretizationPolicy
from dvbn.scoring import (h, h_matrix, log_binom, log_multinomial,
                          mdl_h_matrix, mdl_interval_term, neg_log1m_exp,
                          objective, prior_terms)
from oracles import oracle_mdl, oracle_objective


def to_raw(d_star, g, col):
    """Original-order value lists for the independent oracles."""
    inv = np.empty(col.n, dtype=int)
    inv[col.permutation] = np.arange(col.n)
    x = [float(col.values[inv[i]]) for i in range(col.n)]
    parents_n, children_n, spouses_n = g.neighbors_for_discretization("X")
    parents = [(list(map(int, d_star.columns[p])), d_star.cardinalities[p])
               for p in sorted(parents_n)]
    children = []
    for c, ss in zip(children_n, spouses_n):
        sp = [(list(map(int, d_star.columns[s])), d_star.cardinalities[s])
              for s in sorted(ss)]
        children.append((list(map(int, d_star.columns[c])),
                         d_star.cardinalities[c], sp))
    return x, parents, children


def test_log_binom_and_multinomial():
    assert log_binom(5, 2) == pytest.approx(math.log(10))
    assert log_binom(4, 0) == 0.0
    assert log_multinomial(4, [2, 1, 1]) == pytest.approx(math.log(12))
    with pytest.raises(ValidationError):
        log_binom(2, 3)
    with pytest.raises(ValidationError):
        log_multinomial(4, [2, 1])


def test_neg_log1m_exp():
    assert neg_log1m_exp(1.0) == pytest.approx(-math.log(1 - math.exp(-1.0)))
    assert neg_log1m_exp(1e-12) > 20  # stable, not -log(0)
    with pytest.raises(ValidationError):
        neg_log1m_exp(0.0)


def test_prior_terms_hand_case():
    # values 0, 1, 3; one edge after the first unique (lambda = [1, 3]), L = 2
    col = sorted_column(np.array([0.0, 1.0, 3.0]))
    got = prior_terms(col, [1, 3], 2)
    rng = 3.0
    expected = (-math.log(1 - math.exp(-2 * 1.0 / rng))  # edge gap 1.0
                + 2 * 0.0 / rng                          # first interval length
                + 2 * (3.0 - 1.0) / rng)                 # second interval length
    assert got == pytest.approx(expected)


def test_h_matrix_matches_direct_kernel():
    for seed in range(40):
        d_star, g, col = random_instance(seed)
        ctx = build_context(d_star, g, "X", col)
        hm = h_matrix(ctx, col)
        s = col.last_occurrence
        for u in range(col.m):
            for v in range(u + 1, col.m + 1):
                a = 0 if u == 0 else int(s[u - 1])
                assert hm[u, v - 1] == pytest.approx(h(ctx, a + 1, int(s[v - 1])),
                                                     abs=1e-9)


def test_mdl_h_matrix_matches_direct_kernel():
    for seed in range(40):
        d_star, g, col = random_instance(seed)
        ctx = build_context(d_star, g, "X", col)
        hm = mdl_h_matrix(ctx, col)
        s = col.last_occurrence
        for u in range(col.m):
            for v in range(u + 1, col.m + 1):
                a = 0 if u == 0 else int(s[u - 1])
                assert hm[u, v - 1] == pytest.approx(
                    mdl_interval_term(ctx, a + 1, int(s[v - 1])), abs=1e-9)


def test_objective_matches_independent_oracle():
    for seed in range(100):
        d_star, g, col = random_instance(seed)
        ctx = build_context(d_star, g, "X", col)
        pol = random_policy(seed + 1, col)
        x, parents, children = to_raw(d_star, g, col)
        expected = oracle_objective(x, parents, children, list(pol.edges), ctx.L)
        assert objective(col, ctx, pol) == pytest.approx(expected, abs=1e-9)


def test_mdl_terms_match_independent_oracle():
    from dvbn.discretizer import mdl_objective
    for seed in range(100):
        d_star, g, col = random_instance(seed)
        ctx = build_context(d_star, g, "X", col)
        pol = random_policy(seed + 2, col)
        x, parents, children = to_raw(d_star, g, col)
        expected = oracle_mdl(x, parents, children, list(pol.edges))
        assert mdl_objective(pol, col, ctx) == pytest.approx(expected, abs=1e-9)


def test_objective_degenerate_column():
    x = np.array([2.0, 2.0, 2.0])
    d_star = DiscreteDataset({"X": np.ones(3, dtype=np.int64),
                              "P": np.array([1, 2, 1], dtype=np.int64)},
                             {"X": 1, "P": 2})
    g = Dag({"X": None, "P": 2}).add_edge("P", "X")
    col = sorted_column(x)
    ctx = build_context(d_star, g, "X", col)
    pol = DiscretizationPolicy((), 2.0, 2.0)
    assert objective(col, ctx, pol) == float(ctx.L)
    with pytest.raises(ValidationError):
        objective(col, ctx, DiscretizationPolicy((2.5,), 2.0, 3.0))
