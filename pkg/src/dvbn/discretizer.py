"""Single-variable optimal discretization.

Two exact solvers over the midpoint candidate space: a quadratic dynamic
program for the Bayesian objective, and a layered (cubic) dynamic program for
the MDL baseline.  Exhaustive enumerators over all edge subsets are provided
as test oracles for both.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .counts import NeighborContext, build_context
from .dataset import DiscreteDataset, SortedColumn
from .errors import ValidationError
from .graph import Dag
from .policy import DiscretizationPolicy, midpoint_candidates, representations
from .scoring import (h_matrix, mdl_h_matrix, mdl_interval_term, neg_log1m_exp,
                      objective)


@dataclass
class DpState:
    """Bayesian DP internals, kept around for substructure checks."""

    S: list[float]        # S[v]: best objective over rows 1..s_v (S[0] unused)
    back: list[int]       # back[v]: split boundary u, 0 = single interval
    W: list[float]        # W[v]: edge penalty after unique v (W[m] = 0)


def _empty_policy(col: SortedColumn) -> DiscretizationPolicy:
    return DiscretizationPolicy((), float(col.values[0]), float(col.values[-1]))


def bayes_dp(col: SortedColumn, hm: np.ndarray, L: int) -> DpState:
    """Optimal-prefix recursion over unique-value boundaries.

    ``hm[u, v-1]`` must hold the interval kernel over rows ``s_u+1..s_v``.
    Ties prefer the larger split index (fewer, later edges).
    """
    u0 = col.uniques
    m = col.m
    rng = float(u0[-1] - u0[0])
    if rng <= 0:
        raise ValidationError("degenerate column has no DP to run")
    Lr = L / rng

    W = [0.0] * (m + 1)
    for i in range(1, m):
        W[i] = neg_log1m_exp(L * float(u0[i] - u0[i - 1]) / rng)

    S = [0.0] * (m + 1)
    back = [0] * (m + 1)
    S[1] = W[1] + float(hm[0, 0])  # single interval over rows 1..s_1
    for v in range(2, m + 1):
        col_v = hm[:v, v - 1].tolist()
        uv = float(u0[v - 1])
        best = W[v] + col_v[0] + Lr * (uv - float(u0[0]))  # u = v: one interval
        bu = 0
        for u in range(1, v):
            cand = W[v] + col_v[u] + Lr * (uv - float(u0[u])) + S[u]
            if cand <= best:
                best, bu = cand, u
        S[v] = best
        back[v] = bu
    return DpState(S, back, W)


def _edges_from_back(back: list[int], col: SortedColumn) -> tuple[float, ...]:
    u0 = col.uniques
    edges = []
    v = len(back) - 1
    while back[v] != 0:
        u = back[v]
        edges.append(float(u0[u - 1] + u0[u]) / 2.0)
        v = u
    return tuple(reversed(edges))


def discretize_one_bayes(d_star: DiscreteDataset, g: Dag, x: str,
                         col: SortedColumn) -> DiscretizationPolicy:
    """Globally optimal Bayesian policy via the boundary DP."""
    if col.m == 1:
        return _empty_policy(col)
    ctx = build_context(d_star, g, x, col)
    hm = h_matrix(ctx, col)
    dp = bayes_dp(col, hm, ctx.L)
    return DiscretizationPolicy(_edges_from_back(dp.back, col),
                                float(col.values[0]), float(col.values[-1]))


def _best_subset(col: SortedColumn, evaluate) -> DiscretizationPolicy:
    """Exhaustive minimum over all midpoint-edge subsets; ties prefer fewer
    edges, then the lexicographically smaller edge tuple."""
    if col.m > 20:
        raise ValidationError("exhaustive search refused for m > 20")
    mids = [float(e) for e in midpoint_candidates(col)]
    lo, hi = float(col.values[0]), float(col.values[-1])
    best_val, best_policy = None, None
    for r in range(len(mids) + 1):
        for combo in itertools.combinations(mids, r):
            p = DiscretizationPolicy(combo, lo, hi)
            val = evaluate(p)
            if best_val is None or val < best_val:
                best_val, best_policy = val, p
            elif val == best_val:
                key = (len(p.edges), p.edges)
                if key < (len(best_policy.edges), best_policy.edges):
                    best_policy = p
    return best_policy


def brute_force_bayes(d_star: DiscreteDataset, g: Dag, x: str,
                      col: SortedColumn) -> DiscretizationPolicy:
    ctx = build_context(d_star, g, x, col)
    return _best_subset(col, lambda p: objective(col, ctx, p))


# ---------------------------------------------------------------------------
# MDL baseline
# ---------------------------------------------------------------------------

def _binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def mdl_penalty(k: int, m: int, ctx: NeighborContext) -> float:
    """Terms of the MDL objective that depend only on the interval count."""
    n = ctx.n
    params = ctx.j_parent * (k - 1)
    for grp in ctx.children:
        params += grp.j_spouse * k * (grp.j_child - 1)
    total = 0.5 * math.log(n) * params + math.log(k)
    if m > 1:
        total += (m - 1) * _binary_entropy((k - 1) / (m - 1))
    return total


def mdl_objective(policy: DiscretizationPolicy, col: SortedColumn,
                  ctx: NeighborContext) -> float:
    """Description length plus negated mutual-information fit for a policy."""
    if policy.k > col.m:
        raise ValidationError("more intervals than unique values")
    total = mdl_penalty(policy.k, col.m, ctx)
    if policy.k == 1:
        return total + mdl_interval_term(ctx, 1, ctx.n)
    lam, _ = representations(policy, col)
    prev = 0
    for li in lam:
        total += mdl_interval_term(ctx, prev + 1, int(li))
        prev = int(li)
    return total


def mdl_dp(col: SortedColumn, hmdl: np.ndarray, ctx: NeighborContext):
    """Layered DP: exact best interval-sum for every interval count k.

    Returns ``(edges, total, per_k_totals)`` where ``per_k_totals[k-1]`` is the
    full MDL objective of the best k-interval policy.
    """
    m = col.m
    u0 = col.uniques
    # strictly-lower entries are meaningless; poison them for the layer mins
    hmask = hmdl.copy()
    hmask[np.tril_indices(m, k=-1)] = np.inf

    s_prev = hmask[0, :].copy()            # k = 1: single interval over prefix
    per_k = [mdl_penalty(1, m, ctx) + float(s_prev[m - 1])]
    backs: list[np.ndarray | None] = [None, None]  # backs[k] is layer k's pointers
    best_k, best_total = 1, per_k[0]
    for k in range(2, m + 1):
        idx_u = np.arange(k - 1, m)        # split boundary candidates
        a = s_prev[idx_u - 1][:, None] + hmask[idx_u, :]
        rev = a[::-1]
        arg_rev = np.argmin(rev, axis=0)   # ties resolve to the larger u
        s_new = rev[arg_rev, np.arange(m)]
        back_k = idx_u[len(idx_u) - 1 - arg_rev].astype(np.int32)
        total_k = mdl_penalty(k, m, ctx) + float(s_new[m - 1])
        per_k.append(total_k)
        backs.append(back_k)
        if total_k < best_total:
            best_k, best_total = k, total_k
        s_prev = s_new

    edges = []
    v = m
    for k in range(best_k, 1, -1):
        u = int(backs[k][v - 1])
        edges.append(float(u0[u - 1] + u0[u]) / 2.0)
        v = u
    return tuple(reversed(edges)), best_total, per_k


def discretize_one_mdl(d_star: DiscreteDataset, g: Dag, x: str,
                       col: SortedColumn) -> DiscretizationPolicy:
    """Globally optimal MDL policy over all interval counts."""
    if col.m == 1:
        return _empty_policy(col)
    ctx = build_context(d_star, g, x, col)
    hmdl = mdl_h_matrix(ctx, col)
    edges, _, _ = mdl_dp(col, hmdl, ctx)
    return DiscretizationPolicy(edges, float(col.values[0]), float(col.values[-1]))


def brute_force_mdl(d_star: DiscreteDataset, g: Dag, x: str,
                    col: SortedColumn) -> DiscretizationPolicy:
    ctx = build_context(d_star, g, x, col)
    return _best_subset(col, lambda p: mdl_objective(p, col, ctx))


def discretize_one(d_star: DiscreteDataset, g: Dag, x: str, col: SortedColumn,
                   method: str = "bayes") -> DiscretizationPolicy:
    if method == "bayes":
        return discretize_one_bayes(d_star, g, x, col)
    if method == "mdl":
        return discretize_one_mdl(d_star, g, x, col)
    raise ValidationError(f"unknown discretization method {method!r}")
