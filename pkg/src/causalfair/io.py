"""Schema files, CSV ingestion and graph serialization.

JSON is the interchange format; DOT files are for rendering, but they
carry every endpoint mark so they can be parsed back as well.
"""

from __future__ import annotations

import csv
import json
import os
import re
import tempfile
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple, Union

import numpy as np

from .data import CATEGORICAL, CONTINUOUS, Dataset
from .errors import DataError, EmptyDataset, MissingValue, SchemaMismatch
from .fairness import EXPLAINING, REDLINING, FairnessQuery
from .graph import ARROW, CIRCLE, TAIL, BackgroundKnowledge, EdgeMark, MixedGraph
from .sbcn import BernoulliNode, SbcnGraph

SENSITIVE, OUTCOME, COVARIATE = "sensitive", "outcome", "covariate"
ROLES = (SENSITIVE, OUTCOME, COVARIATE)
MEDIATOR_KINDS = (REDLINING, EXPLAINING, "none")


@dataclass
class VariableSpec:
    name: str
    kind: str
    tier: int
    role: str = COVARIATE
    mediator_kind: str = "none"


@dataclass
class Schema:
    """Per-variable metadata plus the fairness query labels."""

    variables: List[VariableSpec]
    outcome_positive: str
    privileged: str
    protected: str

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def _one(self, role: str) -> str:
        return next(v.name for v in self.variables if v.role == role)

    @property
    def sensitive(self) -> str:
        return self._one(SENSITIVE)

    @property
    def outcome(self) -> str:
        return self._one(OUTCOME)

    @property
    def tiers(self) -> Dict[str, int]:
        return {v.name: v.tier for v in self.variables}

    def query(self) -> FairnessQuery:
        return FairnessQuery(self.sensitive, self.outcome, self.privileged, self.protected, self.outcome_positive)

    def background(self) -> BackgroundKnowledge:
        return BackgroundKnowledge(tiers=self.tiers)

    def meta(self) -> dict:
        return dict(
            tiers=self.tiers,
            roles={v.name: v.role for v in self.variables},
            mediator_kinds={v.name: v.mediator_kind for v in self.variables if v.mediator_kind != "none"},
        )

    def to_dict(self) -> dict:
        return {
            "variables": [
                {"name": v.name, "kind": v.kind, "tier": v.tier, "role": v.role, "mediator_kind": v.mediator_kind}
                for v in self.variables
            ],
            "outcome_positive": self.outcome_positive,
            "sensitive_groups": {"privileged": self.privileged, "protected": self.protected},
        }


def parse_schema(raw: Mapping) -> Schema:
    """Validate a schema mapping.

    Raises
    ------
    SchemaMismatch
        On unknown kinds/roles, missing tiers, or a role count other than
        one sensitive and one outcome variable.
    """
    try:
        items = raw["variables"]
        positive = str(raw["outcome_positive"])
        groups = raw["sensitive_groups"]
        privileged, protected = str(groups["privileged"]), str(groups["protected"])
    except (KeyError, TypeError) as exc:
        raise SchemaMismatch(f"schema is missing required field {exc}") from None
    variables, seen = [], set()
    for item in items:
        name = item.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaMismatch(f"variable entry without a name: {item!r}")
        if name in seen:
            raise SchemaMismatch(f"variable {name!r} declared twice")
        seen.add(name)
        kind = item.get("kind")
        if kind not in (CONTINUOUS, CATEGORICAL):
            raise SchemaMismatch(f"variable {name!r}: kind must be continuous or categorical, got {kind!r}")
        tier = item.get("tier")
        if not isinstance(tier, int) or isinstance(tier, bool):
            raise SchemaMismatch(f"variable {name!r}: integer tier required")
        role = item.get("role", COVARIATE)
        if role not in ROLES:
            raise SchemaMismatch(f"variable {name!r}: role must be one of {ROLES}")
        mk = item.get("mediator_kind", "none")
        if mk not in MEDIATOR_KINDS:
            raise SchemaMismatch(f"variable {name!r}: mediator_kind must be one of {MEDIATOR_KINDS}")
        variables.append(VariableSpec(name, kind, tier, role, mk))
    for role in (SENSITIVE, OUTCOME):
        count = sum(v.role == role for v in variables)
        if count != 1:
            raise SchemaMismatch(f"schema needs exactly one {role} variable, found {count}")
    if privileged == protected:
        raise SchemaMismatch("privileged and protected groups must differ")
    return Schema(variables, positive, privileged, protected)


def load_schema(path: str) -> Schema:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaMismatch(f"schema is not valid JSON: {exc}") from None
    return parse_schema(raw)


def load_dataset(csv_path: str, schema: Union[str, Schema]) -> Dataset:
    """Read a CSV whose header matches the schema names.

    Categorical levels are numbered in order of first appearance; empty
    cells are rejected.

    Raises
    ------
    SchemaMismatch
        Header and schema disagree, a continuous cell is not a number, or a
        query label is not a level of its column.
    MissingValue
        An empty cell; ``row`` counts data rows from 1.
    EmptyDataset
        The file has a header but no rows.
    """
    if isinstance(schema, str):
        schema = load_schema(schema)
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise EmptyDataset(f"{csv_path} is empty") from None
        rows = [r for r in reader if r]
    unknown = [h for h in header if h not in schema.names]
    if unknown:
        raise SchemaMismatch(f"column {unknown[0]!r} is not declared in the schema")
    missing = [n for n in schema.names if n not in header]
    if missing:
        raise SchemaMismatch(f"schema variable {missing[0]!r} has no column in the CSV")
    if len(set(header)) != len(header):
        raise SchemaMismatch("duplicate column names in the CSV header")
    if not rows:
        raise EmptyDataset(f"{csv_path} has no data rows")
    pos = {h: j for j, h in enumerate(header)}
    columns, kinds = {}, {}
    for spec in schema.variables:
        j = pos[spec.name]
        cells = []
        for i, row in enumerate(rows, start=1):
            cell = row[j].strip() if j < len(row) else ""
            if cell == "":
                raise MissingValue(i, spec.name)
            cells.append(cell)
        if spec.kind == CONTINUOUS:
            try:
                columns[spec.name] = np.array([float(c) for c in cells])
            except ValueError:
                raise SchemaMismatch(f"column {spec.name!r} is declared continuous but holds non-numeric values") from None
        else:
            columns[spec.name] = np.array(cells, dtype=object)
        kinds[spec.name] = spec.kind
    d = Dataset.from_columns(columns, kinds, **schema.meta())
    _check_labels(d, schema)
    return d


def _check_labels(d: Dataset, schema: Schema) -> None:
    checks = [(schema.sensitive, schema.privileged), (schema.sensitive, schema.protected),
              (schema.outcome, schema.outcome_positive)]
    for var, label in checks:
        if not d.is_categorical(var):
            continue
        if label not in d.levels(var):
            raise SchemaMismatch(f"label {label!r} does not occur in column {var!r}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_DOT_MARK = {ARROW: "normal", TAIL: "none", CIRCLE: "odot"}
_MARK_DOT = {v: k for k, v in _DOT_MARK.items()}


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _unq(s: str) -> str:
    return s[1:-1].replace('\\"', '"').replace("\\\\", "\\")


def dot_string(g: Union[MixedGraph, SbcnGraph]) -> str:
    """DOT text; MixedGraph edges set both ``arrowtail`` and ``arrowhead``."""
    lines = ["digraph G {"]
    if isinstance(g, SbcnGraph):
        for n in g.nodes:
            lines.append(f"  {_q(n)};")
        for e in g.to_dict()["edges"]:
            lines.append(f'  {_q(e["from"])} -> {_q(e["to"])} [label="{e["weight"]:.3f}"];')
    else:
        for n in g.nodes:
            lines.append(f"  {_q(n)};")
        for e in g.edges:
            lines.append(
                f"  {_q(e.u)} -> {_q(e.v)} [dir=both, arrowtail={_DOT_MARK[e.mark_u]}, arrowhead={_DOT_MARK[e.mark_v]}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE_RE = re.compile(r'^\s*("(?:[^"\\]|\\.)*")\s*;\s*$')
_EDGE_RE = re.compile(r'^\s*("(?:[^"\\]|\\.)*")\s*->\s*("(?:[^"\\]|\\.)*")\s*\[(.*)\]\s*;\s*$')
_ATTR_RE = re.compile(r'(\w+)\s*=\s*("(?:[^"\\]|\\.)*"|[^,\s]+)')


def parse_dot(text: str) -> MixedGraph:
    """Parse DOT written by :func:`dot_string` for a MixedGraph."""
    nodes: List[str] = []
    edges: List[Tuple[str, str, EdgeMark, EdgeMark]] = []
    for line in text.splitlines():
        m = _EDGE_RE.match(line)
        if m:
            attrs = dict(_ATTR_RE.findall(m.group(3)))
            try:
                mu, mv = _MARK_DOT[attrs["arrowtail"]], _MARK_DOT[attrs["arrowhead"]]
            except KeyError:
                raise DataError(f"edge line lacks endpoint marks: {line.strip()!r}") from None
            edges.append((_unq(m.group(1)), _unq(m.group(2)), mu, mv))
            continue
        m = _NODE_RE.match(line)
        if m:
            nodes.append(_unq(m.group(1)))
    return MixedGraph(nodes, edges)


def graph_to_json(g: Union[MixedGraph, SbcnGraph]) -> dict:
    if isinstance(g, SbcnGraph):
        return {"type": "sbcn", **g.to_dict()}
    return {"type": "mixed", **g.to_dict()}


def graph_from_json(data: Mapping) -> Union[MixedGraph, SbcnGraph]:
    if data.get("type") == "sbcn":
        def node(s):
            var, _, val = s.partition("=")
            return BernoulliNode(var, val)

        weights = {(node(e["from"]), node(e["to"])): float(e["weight"]) for e in data["edges"]}
        return SbcnGraph([node(s) for s in data["nodes"]], weights, float(data.get("score", 0.0)))
    return MixedGraph.from_dict(data)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_dot(g: Union[MixedGraph, SbcnGraph], path: str) -> None:
    write_atomic(path, dot_string(g))


def export_json(g: Union[MixedGraph, SbcnGraph], path: str) -> None:
    write_atomic(path, dumps(graph_to_json(g)))


def write_csv(d: Dataset, path: str) -> None:
    """Write a dataset with labels for categorical columns (weights are dropped)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(d.names)
        cols = []
        for name in d.names:
            if d.is_categorical(name):
                labs = d.levels(name)
                cols.append([labs[c] for c in d.codes(name)])
            else:
                cols.append([repr(float(x)) for x in d.column(name)])
        w.writerows(zip(*cols))


__all__ = [
    "Schema",
    "VariableSpec",
    "dot_string",
    "dumps",
    "export_dot",
    "export_json",
    "graph_from_json",
    "graph_to_json",
    "load_dataset",
    "load_schema",
    "parse_dot",
    "parse_schema",
    "write_atomic",
    "write_csv",
]
