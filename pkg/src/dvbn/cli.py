"""Command-line drivers: discretize, learn, evaluate, bench.

All randomness flows from the mandatory ``--seed``; outputs are JSON and CSV
files under ``--out`` and are bit-reproducible for a fixed seed (wall-time
fields excepted).
"""

from __future__ import annotations

import csv
import functools
import json
import os
import sys

import click

from . import bench as bench_mod
from .dataset import load_csv, load_schema
from .errors import ConfigError, DataError, DvbnError
from .evaluation import CvReport, cross_validate, naive_bayes_protocol
from .graph import Dag
from .multivar import discretize_all
from .structure import multi_restart

EXIT_CONFIG = 2
EXIT_DATA = 3


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as e:
            click.echo(f"config error: {e}", err=True)
            sys.exit(EXIT_CONFIG)
        except (DataError, DvbnError) as e:
            click.echo(f"data error: {e}", err=True)
            sys.exit(EXIT_DATA)
    return wrapper


def _load_dataset(data_path: str, schema_path: str | None):
    if not os.path.exists(data_path):
        raise ConfigError(f"data file not found: {data_path}")
    schema = None
    if schema_path is not None:
        if not os.path.exists(schema_path):
            raise ConfigError(f"schema file not found: {schema_path}")
        schema = load_schema(schema_path)
    return load_csv(data_path, schema)


def _load_structure(path: str) -> Dag:
    if not os.path.exists(path):
        raise ConfigError(f"structure file not found: {path}")
    with open(path) as f:
        return Dag.from_json(f.read())


def _write(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as f:
        f.write(text)
    return path


@click.group()
def main():
    """Discrete-valued Bayesian networks from mixed continuous/discrete data."""


@main.command()
@click.option("--data", required=True, help="CSV dataset path")
@click.option("--schema", default=None, help="column schema JSON")
@click.option("--structure", required=True, help="network structure JSON")
@click.option("--method", type=click.Choice(["bayes", "mdl", "uniform"]), default="bayes")
@click.option("--k", type=int, default=5, help="interval count for method=uniform")
@click.option("--seed", type=int, required=True)
@click.option("--max-cycles", type=int, default=10)
@click.option("--out", required=True, help="output directory")
@_handle_errors
def discretize(data, schema, structure, method, k, seed, max_cycles, out):
    """Discretize all continuous variables on a fixed structure."""
    d = _load_dataset(data, schema)
    g = _load_structure(structure)
    cont = d.continuous_names()
    if method == "uniform":
        from .dataset import sorted_column
        from .multivar import PolicySet
        from .policy import equal_width
        pset = PolicySet({x: equal_width(sorted_column(d.columns[x]), k) for x in cont},
                         0, True)
    else:
        pset = discretize_all(d, g, g.reverse_topological(set(cont)),
                              max_cycles=max_cycles, method=method)
    for name, pol in sorted(pset.policies.items()):
        _write(out, f"policy_{name}.json", pol.to_json(variable=name))
    rows = [{"variable": name, "k": pol.k,
             "edges": " ".join(repr(e) for e in pol.edges)}
            for name, pol in sorted(pset.policies.items())]
    _write_csv(out, "policies.csv", ["variable", "k", "edges"], rows)
    summary = {"method": method, "seed": seed, "converged": pset.converged,
               "passes": pset.pass_count}
    if not pset.converged:
        summary["warning"] = "did not converge within max_cycles"
        click.echo("warning: did not converge within max_cycles", err=True)
    _write(out, "discretize_summary.json", json.dumps(summary, indent=2))
    click.echo(f"wrote {len(pset.policies)} policies to {out}")


@main.command()
@click.option("--data", required=True)
@click.option("--schema", default=None)
@click.option("--method", type=click.Choice(["bayes", "mdl"]), default="bayes")
@click.option("--seed", type=int, required=True)
@click.option("--restarts", type=int, default=1)
@click.option("--max-parents", type=int, default=None)
@click.option("--max-cycles", type=int, default=10)
@click.option("--out", required=True)
@_handle_errors
def learn(data, schema, method, seed, restarts, max_parents, max_cycles, out):
    """Learn structure and discretization policies jointly (restarted K2)."""
    d = _load_dataset(data, schema)
    res = multi_restart(d, d.continuous_names(), restarts, seed,
                        max_parents=max_parents, max_cycles=max_cycles,
                        method=method)
    _write(out, "learn_result.json", res.to_json())
    click.echo(f"best score {res.score:.6f} "
               f"(restart {res.restart_seed}, {len(res.graph.edges)} edges)")


@main.command()
@click.option("--data", required=True)
@click.option("--schema", default=None)
@click.option("--structure", default=None, help="fixed structure JSON (else joint learning)")
@click.option("--method", "methods", type=click.Choice(["bayes", "mdl", "uniform"]),
              multiple=True, required=True)
@click.option("--k", type=int, default=5, help="interval count for method=uniform")
@click.option("--naive-bayes", "nb_class", default=None,
              help="run the naive-Bayes protocol with this class variable")
@click.option("--seed", type=int, required=True)
@click.option("--folds", type=int, default=10)
@click.option("--restarts", type=int, default=1)
@click.option("--max-parents", type=int, default=None)
@click.option("--max-cycles", type=int, default=10)
@click.option("--out", required=True)
@_handle_errors
def evaluate(data, schema, structure, methods, k, nb_class, seed, folds,
             restarts, max_parents, max_cycles, out):
    """Cross-validated normalized log-likelihood per method."""
    d = _load_dataset(data, schema)
    if nb_class is not None:
        res = naive_bayes_protocol(d, nb_class, folds=folds, seed=seed,
                                   methods=tuple(m for m in methods if m != "uniform"),
                                   max_cycles=max_cycles)
        doc = {m: {"accuracy": r["accuracy"], "mean_loglik": r["mean_loglik"],
                   "fold_accuracies": r["fold_accuracies"],
                   "fold_logliks": r["fold_logliks"],
                   "edges": {v: list(p.edges) for v, p in sorted(r["policies"].items())}}
               for m, r in res.items()}
        _write(out, "naive_bayes_report.json", json.dumps(doc, indent=2))
        for m, r in res.items():
            click.echo(f"{m}: accuracy={r['accuracy']:.4f} mean_ll={r['mean_loglik']:.4f}")
        return
    g = _load_structure(structure) if structure is not None else None
    reports: list[CvReport] = []
    for method in methods:
        rep = cross_validate(d, method, structure=g, folds=folds, seed=seed,
                             uniform_k=k, max_cycles=max_cycles,
                             restarts=restarts, max_parents=max_parents)
        reports.append(rep)
        _write(out, f"cv_{method}.json", rep.to_json())
        click.echo(f"{method}: mean normalized loglik = {rep.mean:.6f}")
    rows = [row for rep in reports for row in rep.csv_rows()]
    _write_csv(out, "cv_folds.csv", ["method", "fold", "loglik_per_sample"], rows)
    if len(reports) >= 2:
        comp = {"methods": [r.method for r in reports],
                "means": [r.mean for r in reports],
                "best": max(reports, key=lambda r: r.mean).method}
        _write(out, "cv_comparison.json", json.dumps(comp, indent=2))


@main.command()
@click.option("--n", "n_values", default="250,500,1000,2000",
              help="comma-separated sample counts")
@click.option("--seed", type=int, required=True)
@click.option("--parents", type=int, default=2)
@click.option("--children", type=int, default=2)
@click.option("--levels", type=int, default=3)
@click.option("--spouses", type=int, default=1)
@click.option("--out", required=True)
@_handle_errors
def bench(n_values, seed, parents, children, levels, spouses, out):
    """Runtime scaling of the two discretizers on synthetic data."""
    try:
        n_list = [int(v) for v in n_values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad --n list: {n_values!r}")
    if not n_list or any(n < 10 for n in n_list):
        raise ConfigError("--n needs values >= 10")
    rows, slopes = bench_mod.run_bench(n_list, seed, n_parents=parents,
                                       n_children=children, levels=levels,
                                       spouses_per_child=spouses)
    csv_rows = [{"method": r.method, "n": r.n, "seconds": f"{r.seconds:.6f}",
                 "k_found": r.k_found,
                 "slope": f"{slopes[r.method]:.4f}" if r.method in slopes else ""}
                for r in rows]
    _write_csv(out, "bench.csv", ["method", "n", "seconds", "k_found", "slope"], csv_rows)
    _write(out, "bench_slopes.json", json.dumps(slopes, indent=2))
    for m, s in slopes.items():
        click.echo(f"{m}: fitted log-log slope {s:.3f}")
    if not slopes:
        click.echo("single n value: no slope fitted")


def _write_csv(out_dir: str, name: str, fields: list[str], rows: list[dict]) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fields)
        w.writeheader()
        w.writerows(rows)
    return path


if __name__ == "__main__":
    main()
