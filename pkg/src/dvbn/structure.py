"""K2 structure search and the combined learn-and-discretize loop.

Families are scored with the Dirichlet-multinomial marginal likelihood under
a uniform prior of 1, so the network score decomposes into per-node terms and
greedy parent addition only ever re-scores one family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dataset import DiscreteDataset, MixedDataset
from .errors import ValidationError
from .graph import Dag
from .multivar import (PolicySet, apply_policies, discretize_all,
                       graph_with_cardinalities, initial_interval_count)


def family_score(x: str, parents, d_star: DiscreteDataset,
                 cache: dict | None = None) -> float:
    """Log marginal likelihood contribution of one node given its parents."""
    parents = tuple(sorted(parents))
    if cache is not None and (x, parents) in cache:
        return cache[(x, parents)]
    r = d_star.cardinalities[x]
    q = 1
    codes = np.zeros(d_star.n_rows, dtype=np.int64)
    for p in parents:
        codes += (d_star.columns[p] - 1) * q
        q *= d_star.cardinalities[p]
    joint = codes * r + (d_star.columns[x] - 1)
    beta = np.bincount(joint, minlength=q * r).reshape(q, r)
    beta0 = beta.sum(axis=1)
    # alpha = 1 everywhere, so alpha0 = r and lgamma(alpha) = 0
    score = float(np.sum(gammaln(r) - gammaln(r + beta0)) + np.sum(gammaln(1 + beta)))
    if cache is not None:
        cache[(x, parents)] = score
    return score


def network_score(g: Dag, d_star: DiscreteDataset, cache: dict | None = None) -> float:
    return sum(family_score(x, g.parents(x), d_star, cache) for x in g.nodes)


def k2_pass(d_star: DiscreteDataset, order: list[str],
            max_parents: int | None = None, cache: dict | None = None) -> Dag:
    """Greedy K2 over a fixed ordering: each node takes the best-scoring
    predecessor repeatedly while the family score strictly improves."""
    g = Dag({x: d_star.cardinalities[x] for x in order})
    for i, x in enumerate(order):
        pa: list[str] = []
        p_old = family_score(x, pa, d_star, cache)
        while max_parents is None or len(pa) < max_parents:
            candidates = [y for y in order[:i] if y not in pa]
            if not candidates:
                break
            scored = [(family_score(x, pa + [y], d_star, cache), y) for y in candidates]
            best_score, best_y = max(scored, key=lambda t: (t[0], t[1]))
            if best_score > p_old:
                g = g.add_edge(best_y, x)
                pa.append(best_y)
                p_old = best_score
            else:
                break
    return g


@dataclass
class LearnResult:
    graph: Dag
    policies: PolicySet
    score: float
    restart_seed: int

    def to_json(self) -> str:
        return json.dumps({
            "score": self.score,
            "restart_seed": self.restart_seed,
            "graph": json.loads(self.graph.to_json()),
            "policies": {
                name: {"edges": list(p.edges), "domain": [p.domain_min, p.domain_max]}
                for name, p in sorted(self.policies.policies.items())
            },
            "converged": self.policies.converged,
            "passes": self.policies.pass_count,
        }, indent=2)


def learn_dvbn(d: MixedDataset, cont_vars: list[str], order: list[str],
               max_parents: int | None = None, max_cycles: int = 10,
               method: str = "bayes", restart_seed: int = 0,
               init_k: int | None = None) -> LearnResult:
    """Alternate greedy K2 parent additions with full rediscretization.

    Every accepted edge triggers a rediscretization of all continuous
    variables on the current graph, after which the node's current family
    score is refreshed on the new discretized dataset.
    """
    if sorted(order) != sorted(d.names):
        raise ValidationError("order must permute all dataset variables")
    k0 = init_k if init_k is not None else initial_interval_count(d)
    g = Dag({v.name: (v.cardinality if v.kind == "discrete" else None)
             for v in d.variables})
    if cont_vars:
        pset = discretize_all(d, g, g.reverse_topological(set(cont_vars)),
                              max_cycles=max_cycles, method=method, init_k=k0)
    else:
        pset = PolicySet({}, 0, True)
    d_star = apply_policies(d, pset.policies)
    g = graph_with_cardinalities(g, d, pset.policies)

    cache: dict = {}
    for i, x in enumerate(order):
        pa: list[str] = []
        p_old = family_score(x, pa, d_star, cache)
        while max_parents is None or len(pa) < max_parents:
            candidates = [y for y in order[:i] if y not in pa]
            if not candidates:
                break
            scored = [(family_score(x, pa + [y], d_star, cache), y) for y in candidates]
            best_score, best_y = max(scored, key=lambda t: (t[0], t[1]))
            if best_score <= p_old:
                break
            g = g.add_edge(best_y, x)
            pa.append(best_y)
            if cont_vars:
                pset = discretize_all(d, g, g.reverse_topological(set(cont_vars)),
                                      max_cycles=max_cycles, method=method, init_k=k0)
                d_star = apply_policies(d, pset.policies)
                g = graph_with_cardinalities(g, d, pset.policies)
                cache = {}
                p_old = family_score(x, pa, d_star, cache)
            else:
                p_old = best_score
    score = network_score(g, d_star, cache)
    return LearnResult(g, pset, score, restart_seed)


def multi_restart(d: MixedDataset, cont_vars: list[str], n_restarts: int,
                  seed: int, max_parents: int | None = None,
                  max_cycles: int = 10, method: str = "bayes",
                  init_k: int | None = None) -> LearnResult:
    """Best of ``n_restarts`` random variable orderings; ties keep the
    earliest restart."""
    if n_restarts < 1:
        raise ValidationError("n_restarts must be >= 1")
    rng = np.random.default_rng(seed)
    best: LearnResult | None = None
    for r in range(n_restarts):
        order = [d.names[i] for i in rng.permutation(len(d.names))]
        res = learn_dvbn(d, cont_vars, order, max_parents=max_parents,
                         max_cycles=max_cycles, method=method,
                         restart_seed=r, init_k=init_k)
        if best is None or res.score > best.score:
            best = res
    return best


def k2_multi_restart(d_star: DiscreteDataset, n_restarts: int, seed: int,
                     max_parents: int | None = None) -> tuple[Dag, float, int]:
    """Plain K2 restarts on already-discrete data with a shared score cache."""
    if n_restarts < 1:
        raise ValidationError("n_restarts must be >= 1")
    rng = np.random.default_rng(seed)
    names = list(d_star.columns)
    cache: dict = {}
    best = None
    for r in range(n_restarts):
        order = [names[i] for i in rng.permutation(len(names))]
        g = k2_pass(d_star, order, max_parents=max_parents, cache=cache)
        score = network_score(g, d_star, cache)
        if best is None or score > best[1]:
            best = (g, score, r)
    return best
