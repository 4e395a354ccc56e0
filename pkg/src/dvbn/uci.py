"""Column schemas and formatting helpers for the supported UCI datasets.

The tool never downloads data.  Iris and Wine CSVs can be materialized from
scikit-learn if it is installed; Auto MPG and Housing must be supplied by the
user (see ``expected_files``) and can be converted from the raw UCI format
with the helpers below.
"""

from __future__ import annotations

import csv

from .errors import DataError

SCHEMAS: dict[str, list[dict]] = {
    "auto-mpg": [
        {"name": "mpg", "kind": "continuous"},
        {"name": "cylinders", "kind": "discrete"},
        {"name": "displacement", "kind": "continuous"},
        {"name": "horsepower", "kind": "continuous"},
        {"name": "weight", "kind": "continuous"},
        {"name": "acceleration", "kind": "continuous"},
        {"name": "model_year", "kind": "discrete"},
        {"name": "origin", "kind": "discrete"},
    ],
    "wine": [{"name": "class", "kind": "discrete"}] + [
        {"name": name, "kind": "continuous"} for name in (
            "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
            "total_phenols", "flavanoids", "nonflavanoid_phenols",
            "proanthocyanins", "color_intensity", "hue",
            "od280_od315_of_diluted_wines", "proline")
    ],
    "iris": [
        {"name": "sepal_length", "kind": "continuous"},
        {"name": "sepal_width", "kind": "continuous"},
        {"name": "petal_length", "kind": "continuous"},
        {"name": "petal_width", "kind": "continuous"},
        {"name": "species", "kind": "discrete"},
    ],
    "housing": [
        {"name": n, "kind": "discrete" if n in ("chas", "rad") else "continuous"}
        for n in ("crim", "zn", "indus", "chas", "nox", "rm", "age", "dis",
                  "rad", "tax", "ptratio", "b", "lstat", "medv")
    ],
}

#: file names the CLI experiment drivers expect under a data directory
EXPECTED_FILES = {
    "auto-mpg": "auto-mpg.csv",
    "wine": "wine.csv",
    "iris": "iris.csv",
    "housing": "housing.csv",
}


def schema_for(name: str) -> list[dict]:
    if name not in SCHEMAS:
        raise DataError(f"unknown dataset {name!r}; known: {sorted(SCHEMAS)}")
    return SCHEMAS[name]


def convert_uci_auto_mpg(raw_path: str, out_csv: str) -> None:
    """Convert the raw whitespace-separated UCI ``auto-mpg.data`` file.

    Missing horsepower cells ('?') become empty cells so the loader drops
    those rows; the trailing quoted car-name field is discarded.
    """
    names = [c["name"] for c in SCHEMAS["auto-mpg"]]
    with open(raw_path) as f, open(out_csv, "w", newline="") as out:
        w = csv.writer(out)
        w.writerow(names)
        for line in f:
            line = line.strip()
            if not line:
                continue
            fields = line.split('"')[0].split()
            if len(fields) != 8:
                raise DataError(f"unexpected field count in line: {line!r}")
            w.writerow(["" if v == "?" else v for v in fields])


def convert_uci_housing(raw_path: str, out_csv: str) -> None:
    """Convert the raw whitespace-separated UCI ``housing.data`` file."""
    names = [c["name"] for c in SCHEMAS["housing"]]
    with open(raw_path) as f, open(out_csv, "w", newline="") as out:
        w = csv.writer(out)
        w.writerow(names)
        for line in f:
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 14:
                raise DataError(f"unexpected field count in line: {line!r}")
            w.writerow(fields)


def write_sklearn_csv(name: str, out_csv: str) -> None:
    """Materialize iris or wine from scikit-learn's bundled copies."""
    try:
        from sklearn import datasets as skd
    except ImportError as e:
        raise DataError("scikit-learn is required to materialize this dataset") from e
    if name == "iris":
        bunch = skd.load_iris()
        header = [c["name"] for c in SCHEMAS["iris"]]
        labels = [bunch.target_names[t] for t in bunch.target]
        rows = [list(x) + [lab] for x, lab in zip(bunch.data, labels)]
    elif name == "wine":
        bunch = skd.load_wine()
        header = [c["name"] for c in SCHEMAS["wine"]]
        rows = [[t + 1] + list(x) for x, t in zip(bunch.data, bunch.target)]
    else:
        raise DataError(f"{name!r} is not bundled with scikit-learn")
    with open(out_csv, "w", newline="") as out:
        w = csv.writer(out)
        w.writerow(header)
        w.writerows(rows)
