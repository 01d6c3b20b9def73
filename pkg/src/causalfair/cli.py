"""Command-line pipeline: discover a causal graph, then bound fairness measures.

Example::

    causalfair --algorithm all --data adult.csv --schema adult.json --out-dir out/
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

from .data import Dataset
from .errors import CausalFairError, NotApplicable
from .fairness import MEASURES, measure_range
from .fci import run_fci
from .ges import run_ges
from .graph import DEFAULT_EXTENSION_CAP, MixedGraph
from .io import Schema, dumps, graph_to_json, load_dataset, load_schema, dot_string, write_atomic
from .lingam import DEFAULT_THRESHOLD, run_direct_lingam
from .pc import run_pc
from .sbcn import BernoulliNode, SbcnGraph, WalkConfig, learn_sbcn, random_walk_score, sbcn_as_causal_graph
from .stats import FISHER_Z, G_SQUARED, TestConfig

ALGORITHMS = ("pc", "fci", "ges", "lingam", "sbcn")


@dataclass
class RunConfig:
    algorithm: str
    data: str
    schema: str
    out_dir: str
    alpha: Optional[float] = None
    lingam_threshold: float = DEFAULT_THRESHOLD
    seed: int = 0
    extension_cap: int = DEFAULT_EXTENSION_CAP
    walk_count: int = 10000
    discretize_bins: Optional[int] = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS + ("all",):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.alpha is not None and not 0.0 < self.alpha < 1.0:
            raise ValueError("--alpha must lie in (0, 1)")
        if self.lingam_threshold < 0:
            raise ValueError("--threshold must be non-negative")
        if self.extension_cap < 1 or self.walk_count < 1:
            raise ValueError("--extension-cap and --walks must be positive")
        if self.discretize_bins is not None and self.discretize_bins < 2:
            raise ValueError("--discretize-bins must be at least 2")

    @property
    def algorithms(self) -> Tuple[str, ...]:
        return ALGORITHMS if self.algorithm == "all" else (self.algorithm,)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "alpha": self.alpha,
            "lingam_threshold": self.lingam_threshold,
            "seed": self.seed,
            "extension_cap": self.extension_cap,
            "walk_count": self.walk_count,
            "discretize_bins": self.discretize_bins,
        }


def discovery_data(algo: str, d: Dataset, bins: Optional[int]) -> Dataset:
    """The dataset an algorithm runs on, after the applicability gate.

    Raises
    ------
    NotApplicable
        lingam on non-continuous data; sbcn on continuous columns without
        ``bins``; pc, fci and ges on mixed data without ``bins``.
    """
    if algo == "lingam":
        if not d.all_continuous:
            raise NotApplicable("lingam requires all-continuous data (linear non-Gaussian model)")
        return d
    if algo == "sbcn":
        if d.all_categorical:
            return d
        if bins is None:
            raise NotApplicable("sbcn requires categorical data: pass --discretize-bins to discretize continuous columns")
        return d.discretize(bins)
    if d.all_continuous or d.all_categorical:
        return d
    if bins is None:
        raise NotApplicable(f"{algo} does not support mixed continuous/categorical data: pass --discretize-bins")
    return d.discretize(bins)


def _test_config(d: Dataset, alpha: Optional[float]) -> TestConfig:
    return TestConfig(FISHER_Z if d.all_continuous else G_SQUARED, alpha)


def discover(algo: str, d: Dataset, schema: Schema, cfg: RunConfig) -> Tuple[MixedGraph, Union[MixedGraph, SbcnGraph], dict]:
    """Run one algorithm.

    Returns the variable-level graph used for fairness, the graph to
    render (the value-level network for sbcn), and the JSON record.
    """
    bk = schema.background()
    rec: dict = {"algorithm": algo, "n": d.n, "variables": list(d.names), "warnings": []}
    render = None
    if algo in ("pc", "fci"):
        tc = _test_config(d, cfg.alpha)
        rec["test"] = {"kind": tc.test_kind, "alpha": tc.alpha}
        if algo == "pc":
            res = run_pc(d, tc, bk)
            g = res.cpdag
            rec.update(tests_performed=res.tests_performed, max_depth_reached=res.max_depth_reached)
        else:
            res = run_fci(d, tc, bk)
            g = res.pag
            rec["y_structures"] = [list(y) for y in res.y_structures]
            rec["definite_edges"] = [list(e) for e in res.definite_edges]
        rec["warnings"] = list(res.warnings)
        rec["sepsets"] = res.sepsets.to_dict(d.names)
    elif algo == "ges":
        state = run_ges(d, bk)
        g = state.cpdag
        rec["score"] = state.score
        rec["steps"] = [{"phase": t.op, "x": t.x, "y": t.y, "delta": t.delta} for t in state.steps]
    elif algo == "lingam":
        res = run_direct_lingam(d, bk, cfg.lingam_threshold)
        g = res.graph
        rec["causal_order"] = list(res.order.order)
        rec["weights"] = [
            {"from": u, "to": v, "weight": res.weights.coefficient(u, v)} for u, v in g.directed_edges()
        ]
    else:
        render = learn_sbcn(d, rng_seed=cfg.seed)
        g = sbcn_as_causal_graph(render, list(d.names), rec["warnings"])
        rec["sbcn"] = graph_to_json(render)
        rec["accepted_moves"] = len(render.trajectory)
        rec["walks"] = _walks(render, d, schema, cfg)
    rec["graph"] = graph_to_json(g)
    return g, (g if render is None else render), rec


def _walks(sg: SbcnGraph, d: Dataset, schema: Schema, cfg: RunConfig) -> dict:
    """Random-walk scores from both sensitive groups toward the decision nodes."""
    y, pos = schema.outcome, schema.outcome_positive
    negatives = [lab for lab in d.levels(y) if lab != pos]
    out: dict = {"negative": negatives[0], "n_walks": cfg.walk_count}
    if len(negatives) > 1:
        out["flag"] = f"outcome has {len(negatives) + 1} levels; {negatives[0]!r} taken as the negative decision"
    wc = WalkConfig(BernoulliNode(y, pos), BernoulliNode(y, negatives[0]), n_walks=cfg.walk_count, rng_seed=cfg.seed)
    for group, label in (("protected", schema.protected), ("privileged", schema.privileged)):
        v = BernoulliNode(schema.sensitive, label)
        if v not in sg.nodes:
            out[group] = {"flag": f"{v} does not occur in the data"}
            continue
        r = random_walk_score(sg, v, wc)
        out[group] = {"ds_minus": r.ds_minus, "ds_plus": r.ds_plus, "unresolved": r.unresolved, "flag": r.flag}
    return out


def fairness_for(g: MixedGraph, d: Dataset, schema: Schema, cfg: RunConfig) -> dict:
    """FairnessReport as JSON, or an error record when it cannot be computed."""
    for var in (schema.sensitive, schema.outcome):
        if not d.is_categorical(var):
            return NotApplicable(f"fairness measures need a categorical {var!r}").to_dict()
    try:
        rep = measure_range(g, d, schema.query(), cfg.extension_cap, cfg.discretize_bins or 5)
    except CausalFairError as exc:
        return exc.to_dict()
    return rep.to_dict()


def comparison_table(reports: Dict[str, dict], skipped: Dict[str, dict]) -> dict:
    table: dict = {}
    for m in MEASURES:
        row = {}
        for algo, rep in reports.items():
            if "measures" not in rep:
                row[algo] = {"error": rep.get("error")}
                continue
            mm = rep["measures"][m]
            row[algo] = {"min": mm["min"], "max": mm["max"], "sign": mm["sign"], "n_dags": rep["n_dags"]}
        table[m] = row
    return {"measures": table, "algorithms": list(reports), "skipped": skipped}


def run_pipeline(cfg: RunConfig) -> int:
    """Run the configured algorithms and write every artifact into ``cfg.out_dir``.

    Returns the process exit code: 0 on success, 1 when a single-algorithm
    run fails or when no algorithm of an ``all`` run could be applied.
    """
    os.makedirs(cfg.out_dir, exist_ok=True)
    try:
        schema = load_schema(cfg.schema)
        data = load_dataset(cfg.data, schema)
        # gate every requested algorithm before any compute
        prepared, skipped = {}, {}
        for algo in cfg.algorithms:
            try:
                prepared[algo] = discovery_data(algo, data, cfg.discretize_bins)
            except NotApplicable as exc:
                if cfg.algorithm != "all":
                    raise
                skipped[algo] = exc.to_dict()
        if not prepared:
            raise NotApplicable("no algorithm is applicable to this dataset")
    except CausalFairError as exc:
        return _fail(cfg, exc)

    reports: Dict[str, dict] = {}
    for algo, d in prepared.items():
        try:
            g, render, rec = discover(algo, d, schema, cfg)
        except CausalFairError as exc:
            if cfg.algorithm != "all":
                return _fail(cfg, exc, algo)
            skipped[algo] = exc.to_dict()
            continue
        rec["config"] = cfg.to_dict()
        report = fairness_for(g, data, schema, cfg)
        rec["enumeration"] = {"cap": cfg.extension_cap, "n_dags": report.get("n_dags"), "error": report.get("error")}
        write_atomic(os.path.join(cfg.out_dir, f"{algo}.graph.json"), dumps(rec))
        write_atomic(os.path.join(cfg.out_dir, f"{algo}.dot"), dot_string(render))
        reports[algo] = report
    write_atomic(os.path.join(cfg.out_dir, "fairness_report.json"), dumps({"reports": reports}))
    if cfg.algorithm == "all":
        write_atomic(os.path.join(cfg.out_dir, "comparison.json"), dumps(comparison_table(reports, skipped)))
    return 0


def _fail(cfg: RunConfig, exc: CausalFairError, algo: Optional[str] = None) -> int:
    err = exc.to_dict()
    if algo is not None:
        err["algorithm"] = algo
    text = dumps(err)
    sys.stderr.write(text)
    try:
        write_atomic(os.path.join(cfg.out_dir, "error.json"), text)
    except OSError:
        pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="causalfair", description=__doc__.splitlines()[0])
    p.add_argument("--algorithm", choices=ALGORITHMS + ("all",), default="all")
    p.add_argument("--data", required=True, help="CSV file whose header matches the schema")
    p.add_argument("--schema", required=True, help="JSON schema file")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--alpha", type=float, default=None,
                   help="CI test level (default 0.01 Fisher-z, 0.05 G-squared)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD, help="DirectLiNGAM pruning threshold")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extension-cap", type=int, default=DEFAULT_EXTENSION_CAP,
                   help="maximum number of DAGs enumerated per equivalence class")
    p.add_argument("--walks", type=int, default=10000, help="random walks per SBCN score")
    p.add_argument("--discretize-bins", type=int, default=None,
                   help="equal-frequency bins for continuous columns where categorical data is required")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(
            algorithm=args.algorithm,
            data=args.data,
            schema=args.schema,
            out_dir=args.out_dir,
            alpha=args.alpha,
            lingam_threshold=args.threshold,
            seed=args.seed,
            extension_cap=args.extension_cap,
            walk_count=args.walks,
            discretize_bins=args.discretize_bins,
        )
    except ValueError as exc:
        sys.stderr.write(dumps({"error": "invalid_config", "message": str(exc)}))
        return 2
    return run_pipeline(cfg)


if __name__ == "__main__":
    sys.exit(main())
