"""Iterative discretization of every continuous variable in a fixed network."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dataset import DiscreteDataset, MixedDataset, sorted_view
from .discretizer import discretize_one
from .errors import ValidationError
from .graph import Dag
from .policy import DiscretizationPolicy, equal_width

DEFAULT_MAX_CYCLES = 10
DEFAULT_INITIAL_K = 5  # used when no variable is initially discrete


@dataclass
class PolicySet:
    policies: dict[str, DiscretizationPolicy] = field(default_factory=dict)
    pass_count: int = 0
    converged: bool = True


def initial_interval_count(d: MixedDataset) -> int:
    """Largest cardinality among initially discrete variables, or the default."""
    cards = [v.cardinality for v in d.variables if v.kind == "discrete"]
    return max(cards) if cards else DEFAULT_INITIAL_K


def apply_policies(d: MixedDataset, policies: dict[str, DiscretizationPolicy]) -> DiscreteDataset:
    """Discretized image of ``d``; every continuous variable needs a policy."""
    columns: dict[str, np.ndarray] = {}
    cards: dict[str, int] = {}
    for v in d.variables:
        if v.kind == "discrete":
            columns[v.name] = d.columns[v.name]
            cards[v.name] = v.cardinality
        else:
            pol = policies[v.name]
            columns[v.name] = pol.apply_array(d.columns[v.name])
            cards[v.name] = pol.k
    return DiscreteDataset(columns, cards)


def graph_with_cardinalities(g: Dag, d: MixedDataset,
                             policies: dict[str, DiscretizationPolicy]) -> Dag:
    out = g
    for v in d.variables:
        if v.name in out.nodes:
            card = v.cardinality if v.kind == "discrete" else policies[v.name].k
            out = out.with_cardinality(v.name, card)
    return out


def discretize_all(d: MixedDataset, g: Dag, cont_vars: list[str],
                   max_cycles: int = DEFAULT_MAX_CYCLES, method: str = "bayes",
                   init_k: int | None = None) -> PolicySet:
    """Leaves-to-root passes of single-variable discretization until the edge
    lists stop changing, starting from equal-width policies.

    ``cont_vars`` must be in reverse topological order with respect to ``g``.
    """
    if max_cycles < 1:
        raise ValidationError("max_cycles must be >= 1")
    for x in cont_vars:
        if not d.is_continuous(x):
            raise ValidationError(f"{x!r} is not continuous")
    if not g.is_reverse_topological(cont_vars):
        raise ValidationError("cont_vars is not in reverse topological order")
    if not cont_vars:
        return PolicySet({}, 0, True)

    k0 = init_k if init_k is not None else initial_interval_count(d)
    cols = {x: sorted_view(d, x) for x in cont_vars}
    policies = {x: equal_width(cols[x], k0) for x in cont_vars}
    d_star = apply_policies(d, policies)
    g_work = graph_with_cardinalities(g, d, policies)

    pass_count = 0
    converged = False
    while pass_count < max_cycles:
        pass_count += 1
        changed = False
        for x in cont_vars:
            pol = discretize_one(d_star, g_work, x, cols[x], method=method)
            if pol.edges != policies[x].edges:
                changed = True
            policies[x] = pol
            d_star = d_star.replace_column(x, pol.apply_array(d.columns[x]), pol.k)
            g_work = g_work.with_cardinality(x, pol.k)
        if not changed:
            converged = True
            break
    if not converged:
        warnings.warn(f"discretization did not converge within {max_cycles} passes",
                      stacklevel=2)
    return PolicySet(policies, pass_count, converged)
