"""Materialize the bundled CSVs and schema files under data/.

Iris and Wine come from scikit-learn's bundled copies.  Auto MPG and Housing
are not redistributed here; convert user-supplied raw UCI files with
``dvbn.uci.convert_uci_auto_mpg`` / ``convert_uci_housing``.
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dvbn.uci import SCHEMAS, write_sklearn_csv  # noqa: E402


def main() -> None:
    root = os.path.join(os.path.dirname(__file__), "..", "data")
    os.makedirs(root, exist_ok=True)
    for name in ("iris", "wine"):
        write_sklearn_csv(name, os.path.join(root, f"{name}.csv"))
        with open(os.path.join(root, f"{name}.schema.json"), "w") as f:
            json.dump({"columns": SCHEMAS[name]}, f, indent=2)
        print(f"wrote {name}.csv and {name}.schema.json")
    for name in ("auto-mpg", "housing"):
        with open(os.path.join(root, f"{name}.schema.json"), "w") as f:
            json.dump({"columns": SCHEMAS[name]}, f, indent=2)
        print(f"wrote {name}.schema.json (CSV must be user-supplied)")


if __name__ == "__main__":
    main()
