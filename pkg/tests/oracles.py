"""Independent reference implementations used only by the tests.

Everything here is computed with plain Python loops, tuples, and
``math.lgamma``; nothing is shared with the package beyond log-gamma itself.
The entry points take raw value lists, not package data structures.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter


def _log_binom(n: int, r: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)


def _interval_of(v: float, edges: list[float]) -> int:
    i = 0
    while i < len(edges) and v >= edges[i]:
        i += 1
    return i  # 0-based


def _product(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def oracle_objective(x: list[float], parents: list[tuple[list[int], int]],
                     children: list[tuple[list[int], int, list[tuple[list[int], int]]]],
                     edges: list[float], L: int) -> float:
    """Direct evaluation of the Bayesian discretization objective.

    ``parents`` is a list of ``(values, cardinality)``; ``children`` is a list
    of ``(values, cardinality, spouses)`` with spouses in the same format.
    """
    n = len(x)
    xs = sorted(x)
    rng = xs[-1] - xs[0]
    k = len(edges) + 1

    total = 0.0
    lam = [sum(1 for v in xs if v < e) for e in edges] + [n]
    for li in lam[:-1]:
        gap = xs[li] - xs[li - 1]
        total += -math.log(1.0 - math.exp(-L * gap / rng))
    prev = 0
    for li in lam:
        total += L * (xs[li - 1] - xs[prev]) / rng
        prev = li

    rows_by_interval: list[list[int]] = [[] for _ in range(k)]
    for r, v in enumerate(x):
        rows_by_interval[_interval_of(v, edges)].append(r)

    pcards = [c for _, c in parents]
    jp = _product(pcards)
    pcombos = list(itertools.product(*[range(1, c + 1) for c in pcards]))
    for rows in rows_by_interval:
        gamma = len(rows)
        cnt = Counter(tuple(vals[r] for vals, _ in parents) for r in rows)
        total += _log_binom(gamma + jp - 1, jp - 1)
        total += math.lgamma(gamma + 1)
        for combo in pcombos:
            total -= math.lgamma(cnt.get(combo, 0) + 1)
        for cvals, ccard, spouses in children:
            scards = [c for _, c in spouses]
            for scombo in itertools.product(*[range(1, c + 1) for c in scards]):
                sub = [r for r in rows
                       if tuple(vals[r] for vals, _ in spouses) == scombo]
                nl = len(sub)
                total += _log_binom(nl + ccard - 1, ccard - 1)
                total += math.lgamma(nl + 1)
                ccnt = Counter(cvals[r] for r in sub)
                for j in range(1, ccard + 1):
                    total -= math.lgamma(ccnt.get(j, 0) + 1)
    return total


def oracle_mdl(x: list[float], parents: list[tuple[list[int], int]],
               children: list[tuple[list[int], int, list[tuple[list[int], int]]]],
               edges: list[float]) -> float:
    """Direct evaluation of the description-length discretization objective."""
    n = len(x)
    m = len(set(x))
    k = len(edges) + 1
    jp = _product(c for _, c in parents)

    params = jp * (k - 1)
    for _, ccard, spouses in children:
        js = _product(c for _, c in spouses)
        params += js * k * (ccard - 1)
    total = 0.5 * math.log(n) * params + math.log(k)
    if m > 1:
        p = (k - 1) / (m - 1)
        if 0.0 < p < 1.0:
            total += (m - 1) * (-p * math.log(p) - (1 - p) * math.log(1 - p))

    xi = [_interval_of(v, edges) for v in x]

    def mutual_info_times_n(left: list, right: list) -> float:
        joint = Counter(zip(left, right))
        lc, rc = Counter(left), Counter(right)
        return sum(c * math.log(c * n / (lc[a] * rc[b]))
                   for (a, b), c in joint.items())

    fit = 0.0
    if jp > 1:
        ptuples = [tuple(vals[r] for vals, _ in parents) for r in range(n)]
        fit += mutual_info_times_n(xi, ptuples)
    for cvals, ccard, spouses in children:
        if ccard > 1:
            joint_parent = [(xi[r],) + tuple(vals[r] for vals, _ in spouses)
                            for r in range(n)]
            fit += mutual_info_times_n(list(cvals), joint_parent)
    return total - fit
