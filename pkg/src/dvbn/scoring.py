"""Log-space evaluation of the discretization objectives.

All combinatorial factors are evaluated with log-gamma; nothing computes a
raw factorial.  Besides the direct per-interval kernel, this module builds
the upper-triangular kernel matrices over unique-value boundaries that the
dynamic programs consume: entry ``(u, v)`` covers sorted rows
``s_u + 1 .. s_v`` (with ``s_0 = 0``).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import xlogy

from .counts import NeighborContext, interval_counts
from .dataset import SortedColumn
from .errors import ValidationError


def log_binom(n: int, r: int) -> float:
    """ln C(n, r) via log-gamma."""
    if r < 0 or n < 0 or r > n:
        raise ValidationError(f"invalid binomial C({n},{r})")
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)


def log_multinomial(total: int, parts) -> float:
    """ln(total! / prod(parts!))."""
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != total:
        raise ValidationError(f"multinomial parts {parts} do not sum to {total}")
    return math.lgamma(total + 1) - sum(math.lgamma(p + 1) for p in parts)


def neg_log1m_exp(z: float) -> float:
    """-ln(1 - exp(-z)) for z > 0, stable for tiny z."""
    if z <= 0:
        raise ValidationError("z must be positive")
    return -math.log(-math.expm1(-z))


def prior_terms(col: SortedColumn, lam, L: int) -> float:
    """Edge-placement prior plus interval-length penalty, in nats.

    ``lam`` is the cumulative-count representation (last entry n); the column
    must have a positive value range.
    """
    x = col.values
    rng = float(x[-1] - x[0])
    if rng <= 0:
        raise ValidationError("degenerate column: zero value range")
    lam = list(lam)
    total = 0.0
    for li in lam[:-1]:  # edge terms, i = 1..k-1
        gap = float(x[li] - x[li - 1])  # x_{λ+1} - x_{λ}, 1-based
        total += neg_log1m_exp(L * gap / rng)
    prev = 0
    for li in lam:  # length terms, i = 1..k with λ_0 = 0
        total += L * float(x[li - 1] - x[prev]) / rng  # x_{λ_i} - x_{λ_{i-1}+1}
        prev = li
    return total


def h(ctx: NeighborContext, u: int, v: int) -> float:
    """Per-interval objective kernel over sorted rows ``u..v`` (direct recount)."""
    table = interval_counts(ctx, u, v)
    gamma = v - u + 1
    val = log_binom(gamma + ctx.j_parent - 1, ctx.j_parent - 1)
    val += log_multinomial(gamma, table.parent_counts)
    for j, grp in enumerate(ctx.children):
        pair = table.child_tables[j]
        for ell in range(grp.j_spouse):
            n_ell = int(pair[:, ell].sum())
            val += log_binom(n_ell + grp.j_child - 1, grp.j_child - 1)
            val += log_multinomial(n_ell, pair[:, ell])
    return val


def objective(col: SortedColumn, ctx: NeighborContext, policy) -> float:
    """Negative log of prior times neighbor likelihood for a policy."""
    from .policy import representations  # local import avoids a cycle

    if col.uniques[0] == col.uniques[-1]:
        # degenerate column: only the single-interval policy is meaningful
        if policy.k != 1:
            raise ValidationError("degenerate column admits only k = 1")
        return float(ctx.L)
    lam, _ = representations(policy, col)
    total = prior_terms(col, lam, ctx.L)
    prev = 0
    for li in lam:
        total += h(ctx, prev + 1, int(li))
        prev = int(li)
    return total


# ---------------------------------------------------------------------------
# Kernel matrices over unique-value boundaries
# ---------------------------------------------------------------------------

def _occurrence_before(codes: np.ndarray) -> np.ndarray:
    """G[r] = number of earlier rows with the same code."""
    order = np.argsort(codes, kind="stable")
    sc = codes[order]
    n = len(codes)
    grp_start = np.concatenate(([0], np.nonzero(np.diff(sc))[0] + 1))
    counts = np.diff(np.concatenate((grp_start, [n])))
    ranks = np.arange(n) - np.repeat(grp_start, counts)
    out = np.empty(n, dtype=np.int64)
    out[order] = ranks
    return out


def _boundary_counts(codes: np.ndarray, j: int, s: np.ndarray) -> np.ndarray:
    """C[u, code] = occurrences of code among the first ``s_u`` rows, u = 0..m-1
    (``s_0 = 0``)."""
    m = len(s)
    out = np.zeros((m, j), dtype=np.int64)
    prev = 0
    for u in range(1, m):
        b = int(s[u - 1])
        out[u] = out[u - 1] + np.bincount(codes[prev:b], minlength=j)
        prev = b
    return out


def h_matrix(ctx: NeighborContext, col: SortedColumn) -> np.ndarray:
    """Bayesian kernel over all boundary intervals; entry (u, v-1) is
    ``h(s_u + 1, s_v)``.  Entries with v <= u are unused and left at 0."""
    m = col.m
    s = col.last_occurrence
    hm = np.zeros((m, m))
    n = ctx.n

    # parent block: per added row, ln(γ + J_P) - ln(c_code + 1)
    if ctx.j_parent > 1:
        codes = ctx.parent_codes
        G = _occurrence_before(codes)
        C = _boundary_counts(codes, ctx.j_parent, s)
        jp = ctx.j_parent
        for u in range(m):
            a = 0 if u == 0 else int(s[u - 1])
            cs = codes[a:]
            c_before = G[a:] - C[u, cs]
            d = np.log(np.arange(n - a) + jp) - np.log(c_before + 1)
            csum = np.cumsum(d)
            hm[u, u:] += csum[s[u:] - 1 - a]

    # child blocks: per added row, ln(n_spouse + J_C) - ln(n_pair + 1)
    for grp in ctx.children:
        if grp.j_child <= 1:
            continue
        pair = grp.pair_codes
        Gp = _occurrence_before(pair)
        Cp = _boundary_counts(pair, grp.j_child * grp.j_spouse, s)
        if grp.j_spouse > 1:
            Gs = _occurrence_before(grp.spouse_codes)
            Cs = _boundary_counts(grp.spouse_codes, grp.j_spouse, s)
        jc = grp.j_child
        for u in range(m):
            a = 0 if u == 0 else int(s[u - 1])
            pc = pair[a:]
            c_pair = Gp[a:] - Cp[u, pc]
            if grp.j_spouse > 1:
                scodes = grp.spouse_codes[a:]
                c_sp = Gs[a:] - Cs[u, scodes]
            else:
                c_sp = np.arange(n - a)
            d = np.log(c_sp + jc) - np.log(c_pair + 1)
            csum = np.cumsum(d)
            hm[u, u:] += csum[s[u:] - 1 - a]

    return hm


def _phi(c: np.ndarray) -> np.ndarray:
    """(c+1)ln(c+1) - c ln c with the 0 ln 0 = 0 convention."""
    c = np.asarray(c, dtype=float)
    return xlogy(c + 1, c + 1) - xlogy(c, c)


def mdl_h_matrix(ctx: NeighborContext, col: SortedColumn) -> np.ndarray:
    """Negated per-interval mutual-information contributions, same layout as
    :func:`h_matrix`.  Summed over a partition this equals
    ``-n·[I(X,Pa) + Σ_j I(C_j, Pa(C_j))]`` up to terms constant in the policy."""
    m = col.m
    s = col.last_occurrence
    hm = np.zeros((m, m))
    n = ctx.n
    log_n = math.log(n)

    if ctx.j_parent > 1:
        codes = ctx.parent_codes
        G = _occurrence_before(codes)
        C = _boundary_counts(codes, ctx.j_parent, s)
        logN = np.log(np.maximum(np.bincount(codes, minlength=ctx.j_parent), 1))
        for u in range(m):
            a = 0 if u == 0 else int(s[u - 1])
            cs = codes[a:]
            c_before = G[a:] - C[u, cs]
            d = _phi(c_before) - logN[cs] - _phi(np.arange(n - a)) + log_n
            csum = np.cumsum(d)
            hm[u, u:] -= csum[s[u:] - 1 - a]

    for grp in ctx.children:
        if grp.j_child <= 1:
            continue
        pair = grp.pair_codes
        Gp = _occurrence_before(pair)
        Cp = _boundary_counts(pair, grp.j_child * grp.j_spouse, s)
        logM = np.log(np.maximum(np.bincount(grp.child_codes, minlength=grp.j_child), 1))
        if grp.j_spouse > 1:
            Gs = _occurrence_before(grp.spouse_codes)
            Cs = _boundary_counts(grp.spouse_codes, grp.j_spouse, s)
        for u in range(m):
            a = 0 if u == 0 else int(s[u - 1])
            pc = pair[a:]
            c_pair = Gp[a:] - Cp[u, pc]
            if grp.j_spouse > 1:
                scodes = grp.spouse_codes[a:]
                c_sp = Gs[a:] - Cs[u, scodes]
            else:
                c_sp = np.arange(n - a)
            d = _phi(c_pair) - logM[grp.child_codes[a:]] - _phi(c_sp) + log_n
            csum = np.cumsum(d)
            hm[u, u:] -= csum[s[u:] - 1 - a]

    return hm


def mdl_interval_term(ctx: NeighborContext, a: int, b: int) -> float:
    """Direct (non-incremental) evaluation of one MDL interval contribution."""
    table = interval_counts(ctx, a, b)
    gamma = b - a + 1
    n = ctx.n
    total = 0.0
    if ctx.j_parent > 1:
        N = np.bincount(ctx.parent_codes, minlength=ctx.j_parent)
        c = table.parent_counts
        with np.errstate(divide="ignore", invalid="ignore"):
            contrib = xlogy(c, c * n / (gamma * np.maximum(N, 1)))
        total += float(np.sum(contrib))
    for j, grp in enumerate(ctx.children):
        if grp.j_child <= 1:
            continue
        M = np.bincount(grp.child_codes, minlength=grp.j_child)
        pair = table.child_tables[j]          # (J_C, J_S)
        t = pair.sum(axis=0)                  # interval-spouse marginals
        denom = np.maximum(np.outer(M, np.maximum(t, 1)), 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            contrib = xlogy(pair, pair * n / denom)
        total += float(np.sum(contrib))
    return -total
