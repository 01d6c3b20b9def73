"""End to end through the command line: CSV + schema in, graphs and reports out.

Writes a sampled dataset and its schema, runs ``causalfair`` in ``all``
mode, then prints the comparison table.  LiNGAM is skipped because the
data are categorical; the reason is recorded in comparison.json.

FCI allows latent confounders and, at this sample size, misses the weak
dependence of W and Y given the collider M.  The wrong separating set
turns three edges bidirected; the fairness report drops them with a flag
(they have no DAG reading), so its FCI ranges rest on fewer DAGs.  With
about 200000 rows the test detects the dependence and the PAG is clean.

Run:  python demos/cli_walkthrough.py [output_dir]
"""

import json
import os
import sys
import tempfile

from causalfair.cli import main as causalfair
from causalfair.io import write_csv
from causalfair.simulate import flip_scm

SCHEMA = {
    "variables": [
        {"name": "X", "kind": "categorical", "tier": 0},
        {"name": "A", "kind": "categorical", "tier": 0, "role": "sensitive"},
        {"name": "W", "kind": "categorical", "tier": 0},
        {"name": "M", "kind": "categorical", "tier": 1, "mediator_kind": "redlining"},
        {"name": "Y", "kind": "categorical", "tier": 2, "role": "outcome"},
    ],
    "outcome_positive": "1",
    "sensitive_groups": {"privileged": "1", "protected": "0"},
}


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    data, schema = os.path.join(out_dir, "flip.csv"), os.path.join(out_dir, "flip.schema.json")
    write_csv(flip_scm().sample(10000, rng=0), data)
    with open(schema, "w") as fh:
        json.dump(SCHEMA, fh, indent=2)

    argv = ["--data", data, "--schema", schema, "--out-dir", os.path.join(out_dir, "results"), "--seed", "0"]
    print("$ causalfair", " ".join(argv))
    code = causalfair(argv)
    print("exit code", code)

    with open(os.path.join(out_dir, "results", "comparison.json")) as fh:
        comp = json.load(fh)
    print("\nskipped:", {k: v["message"] for k, v in comp["skipped"].items()})
    for measure, row in comp["measures"].items():
        cells = "  ".join(f"{algo} [{c['min']:+.3f}, {c['max']:+.3f}]" for algo, c in row.items() if "min" in c)
        print(f"{measure:8s} {cells}")
    print("\nartifacts:", sorted(os.listdir(os.path.join(out_dir, "results"))))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="causalfair-demo-"))
