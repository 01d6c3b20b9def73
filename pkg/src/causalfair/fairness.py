"""Discrimination measures computed from a causal graph and data.

Every measure compares the privileged group ``a1`` with the protected
group ``a0`` on the probability of the positive outcome ``y+``; positive
values mean discrimination against the protected group.  Estimation is by
plug-in: probabilities come from (weighted) frequencies, so an exact joint
distribution given as a weighted table yields exact values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from .data import Dataset
from .errors import EmptyClass, EmptyGroup, FairnessError, MissingVariable
from .graph import (
    ARROW,
    CIRCLE,
    DEFAULT_EXTENSION_CAP,
    MixedGraph,
    all_directed_paths,
    enumerate_consistent_extensions,
    iter_simple_paths,
    pag_to_pdag,
)

log = logging.getLogger(__name__)

TV, TE, ATE_IPW, DE, ID, ED = "TV", "TE", "ATE_IPW", "DE", "ID", "ED"
MEASURES = (TV, TE, ATE_IPW, DE, ID, ED)
EXPLAINING = "explaining"
REDLINING = "redlining"

# g-formula tensors larger than this are refused rather than allocated
MAX_CELLS = 1 << 24
# discrimination signs closer to zero than this count as "fair"
DEFAULT_SIGN_TOL = 1e-9


@dataclass(frozen=True)
class FairnessQuery:
    """Which variables and values a measure compares."""

    sensitive: str
    outcome: str
    privileged: str
    protected: str
    positive: str


@dataclass
class RoleAssignment:
    confounders: FrozenSet[str]
    mediators: FrozenSet[str]
    colliders: FrozenSet[str]
    mediator_kind: Dict[str, str] = field(default_factory=dict)

    def to_dict(self, order: Sequence[str]) -> dict:
        idx = {n: i for i, n in enumerate(order)}

        def srt(s):
            return sorted(s, key=idx.__getitem__)

        return {
            "confounders": srt(self.confounders),
            "mediators": srt(self.mediators),
            "colliders": srt(self.colliders),
            "mediator_kind": {m: self.mediator_kind[m] for m in srt(self.mediators)},
        }


@dataclass
class MeasureValue:
    measure: str
    value: Optional[float]
    dag: int = 0
    identifiable: bool = True
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "value": self.value,
            "dag": self.dag,
            "identifiable": self.identifiable,
            "flags": list(self.flags),
        }


# ---------------------------------------------------------------------------
# Roles
# ---------------------------------------------------------------------------


def _ancestors_avoiding(dag: MixedGraph, target: str, avoid: str) -> Set[str]:
    # nodes with a directed path into target that does not pass through avoid
    seen: Set[str] = set()
    stack = [target]
    while stack:
        v = stack.pop()
        for p in dag.parents(v):
            if p != avoid and p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def classify_roles(
    dag: MixedGraph,
    a: str,
    y: str,
    mediator_kinds: Optional[Mapping[str, str]] = None,
    max_paths: int = 100000,
) -> RoleAssignment:
    """Confounders, mediators and colliders of the pair ``(A, Y)``.

    * mediators: interior nodes of directed ``A -> ... -> Y`` paths;
    * confounders: nodes with a directed path to ``A`` avoiding ``Y`` and
      a directed path to ``Y`` avoiding ``A``;
    * colliders: remaining nodes with both path edges pointing in on some
      simple ``A``–``Y`` path.

    Mediators listed as ``"explaining"`` in ``mediator_kinds`` are
    explaining; all other mediators are redlining.
    """
    for v in (a, y):
        if v not in dag:
            raise MissingVariable(f"{v!r} is not a node of the graph")
    if not dag.is_dag():
        raise FairnessError("role classification needs a DAG")
    kinds = dict(mediator_kinds or {})
    mediators = (dag.descendants(a) & dag.ancestors(y)) - {a, y}
    confounders = (_ancestors_avoiding(dag, a, y) & _ancestors_avoiding(dag, y, a)) - {a, y}
    colliders: Set[str] = set()
    for k, path in enumerate(iter_simple_paths(dag, a, y)):
        if k >= max_paths:
            log.warning("collider search stopped after %d paths", max_paths)
            break
        for prev, node, nxt in zip(path, path[1:], path[2:]):
            if dag.is_directed(prev, node) and dag.is_directed(nxt, node):
                colliders.add(node)
    colliders -= mediators | confounders
    mk = {m: (EXPLAINING if kinds.get(m) == EXPLAINING else REDLINING) for m in mediators}
    return RoleAssignment(frozenset(confounders), frozenset(mediators), frozenset(colliders), mk)


# ---------------------------------------------------------------------------
# Plug-in probability tables
# ---------------------------------------------------------------------------


class _Tables:
    """Weighted contingency tables over categorical columns."""

    def __init__(self, d: Dataset):
        for name in d.names:
            if not d.is_categorical(name):
                raise FairnessError(f"{name!r} must be categorical (discretize continuous columns)")
        self.d = d
        self.w = d.row_weights()
        self.codes = {n: d.codes(n) for n in d.names}
        self.size = {n: d.n_levels(n) for n in d.names}

    def joint(self, names: Sequence[str]) -> np.ndarray:
        """Joint probability array with one axis per name."""
        shape = tuple(self.size[n] for n in names)
        if not names:
            return np.array(1.0)
        flat = np.ravel_multi_index([self.codes[n] for n in names], shape)
        counts = np.bincount(flat, weights=self.w, minlength=int(np.prod(shape)))
        return (counts / self.w.sum()).reshape(shape)

    def cpt(self, v: str, parents: Sequence[str]) -> np.ndarray:
        """``P(v | parents)`` with axes ``(*parents, v)``; NaN where undefined."""
        j = self.joint(list(parents) + [v])
        tot = j.sum(axis=-1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(tot > 0, j / np.where(tot > 0, tot, 1.0), np.nan)


def _codes(d: Dataset, q: FairnessQuery) -> Tuple[int, int, int]:
    for v in (q.sensitive, q.outcome):
        if v not in d:
            raise MissingVariable(f"{v!r} is not in the dataset")
    return d.code_of(q.sensitive, q.privileged), d.code_of(q.sensitive, q.protected), d.code_of(q.outcome, q.positive)


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------


def total_variation(d: Dataset, q: FairnessQuery) -> float:
    """``P(y+ | a1) - P(y+ | a0)`` by plug-in.

    Raises
    ------
    EmptyGroup
        If either group has zero mass.
    """
    a1, a0, yp = _codes(d, q)
    t = _Tables(d.select([q.sensitive, q.outcome]))
    j = t.joint([q.sensitive, q.outcome])
    m1, m0 = j[a1].sum(), j[a0].sum()
    if m1 <= 0 or m0 <= 0:
        raise EmptyGroup(f"group {q.privileged if m1 <= 0 else q.protected!r} of {q.sensitive!r} is empty")
    return float(j[a1, yp] / m1 - j[a0, yp] / m0)


def _adjusted(j: np.ndarray, a1: int, a0: int, yp: int, flags: List[str]) -> float:
    """``sum_c [P(y+|a1,c) - P(y+|a0,c)] P(c)`` for ``j`` with axes (c, a, y)."""
    num = j[:, a1, yp], j[:, a0, yp]
    den = j[:, a1, :].sum(axis=-1), j[:, a0, :].sum(axis=-1)
    pc = j.sum(axis=(1, 2))
    ok = (den[0] > 0) & (den[1] > 0) & (pc > 0)
    if np.any(~ok & (pc > 0)):
        flags.append("sparse_stratum")
    mass = pc[ok].sum()
    if mass <= 0:
        raise EmptyGroup("no stratum contains both groups")
    diff = num[0][ok] / den[0][ok] - num[1][ok] / den[1][ok]
    return float(np.sum(diff * pc[ok]) / mass)


def total_effect(
    d: Dataset,
    dag: MixedGraph,
    q: FairnessQuery,
    roles: Optional[RoleAssignment] = None,
    dag_id: int = 0,
) -> MeasureValue:
    """Backdoor adjustment over the confounders of ``(A, Y)``.

    With no confounders this is exactly :func:`total_variation`, also in
    members of a class where ``A`` does not reach ``Y``; such DAGs carry
    the ``no_directed_path`` flag.
    """
    a, y = q.sensitive, q.outcome
    roles = roles or classify_roles(dag, a, y)
    flags: List[str] = [] if a in dag.ancestors(y) else ["no_directed_path"]
    conf = [c for c in dag.nodes if c in roles.confounders]
    if not conf:
        return MeasureValue(TE, total_variation(d, q), dag_id, flags=flags)
    a1, a0, yp = _codes(d, q)
    if a1 == a0:
        return MeasureValue(TE, 0.0, dag_id, flags=flags)
    t = _Tables(d.select(conf + [a, y]))
    j = t.joint(conf + [a, y]).reshape(-1, t.size[a], t.size[y])
    return MeasureValue(TE, _adjusted(j, a1, a0, yp, flags), dag_id, flags=flags)


def natural_direct_effect(
    d: Dataset,
    dag: MixedGraph,
    q: FairnessQuery,
    roles: Optional[RoleAssignment] = None,
    dag_id: int = 0,
) -> MeasureValue:
    """Mediation formula with mediators held at their protected-group law.

    ``sum_{c,m} [P(y+|a1,m,c) - P(y+|a0,m,c)] P(m|a0,c) P(c)`` where ``m``
    ranges over joint mediator states and ``c`` over ancestors of ``Y``
    that are neither ``A`` nor its descendants.  Exactly zero when the
    graph has no edge ``A -> Y``.
    """
    a, y = q.sensitive, q.outcome
    if not dag.is_directed(a, y):
        return MeasureValue(DE, 0.0, dag_id, flags=["no_direct_edge"])
    roles = roles or classify_roles(dag, a, y)
    med = [m for m in dag.nodes if m in roles.mediators]
    if not med:
        te = total_effect(d, dag, q, roles, dag_id)
        return MeasureValue(DE, te.value, dag_id, flags=list(te.flags))
    pre = (dag.ancestors(y) - dag.descendants(a)) - {a, y}
    conf = [c for c in dag.nodes if c in pre]
    a1, a0, yp = _codes(d, q)
    t = _Tables(d.select(conf + [a] + med + [y]))
    na, ny = t.size[a], t.size[y]
    j = t.joint(conf + [a] + med + [y]).reshape(-1, na, int(np.prod([t.size[m] for m in med])), ny)
    # axes: c, a, m, y
    pc = j.sum(axis=(1, 2, 3))
    pa_c = j.sum(axis=(2, 3))  # c, a
    pam_c = j.sum(axis=3)  # c, a, m
    flags: List[str] = []
    with np.errstate(invalid="ignore", divide="ignore"):
        p_m = pam_c[:, a0, :] / pa_c[:, a0][:, None]
        p1 = j[:, a1, :, yp] / pam_c[:, a1, :]
        p0 = j[:, a0, :, yp] / pam_c[:, a0, :]
    weight = p_m * pc[:, None]
    ok = np.isfinite(p1) & np.isfinite(p0) & np.isfinite(weight) & (weight > 0)
    if np.any(~ok & (np.nan_to_num(weight, nan=1.0) > 0)):
        flags.append("sparse_stratum")
    mass = float(weight[ok].sum())
    if mass <= 0:
        raise EmptyGroup("no stratum supports the mediation formula")
    total = float(np.sum((p1[ok] - p0[ok]) * weight[ok]))
    return MeasureValue(DE, total / mass, dag_id, flags=flags)


def _first_edge_closed(paths_all: List[Tuple[str, ...]], active: Set[Tuple[str, ...]]) -> Optional[Set[str]]:
    """Children of ``A`` whose edges are active, or None for a recanting witness.

    The active set must be a union of whole "first edge" groups: every
    path leaving ``A`` through a given child is either active or not.
    """
    groups: Dict[str, Set[bool]] = {}
    for p in paths_all:
        groups.setdefault(p[1], set()).add(p in active)
    if any(len(s) > 1 for s in groups.values()):
        return None
    return {c for c, s in groups.items() if True in s}


def _g_formula(t: _Tables, dag: MixedGraph, a: str, y: str, yp: int, edge_value: Mapping[str, int], flags: List[str]) -> float:
    """``P(Y = y+)`` when each child ``W`` of ``A`` reads ``A = edge_value[W]``."""
    nodes = [v for v in dag.topological_order() if v in dag.ancestors(y) | {y} and v != a]
    axis = {v: k for k, v in enumerate(nodes)}
    shape = [t.size[v] for v in nodes]
    if int(np.prod(shape)) > MAX_CELLS:
        raise FairnessError(f"g-formula over {len(nodes)} variables exceeds {MAX_CELLS} cells")
    prod = np.ones(shape)
    for v in nodes:
        pa = list(dag.parents(v))
        tab = t.cpt(v, pa)
        if a in pa:
            k = pa.index(a)
            tab = np.take(tab, edge_value[v], axis=k)
            pa.pop(k)
        src = pa + [v]
        order = sorted(range(len(src)), key=lambda i: axis[src[i]])
        tab = np.transpose(tab, order)
        view = [1] * len(nodes)
        for i in order:
            view[axis[src[i]]] = t.size[src[i]]
        prod = prod * np.nan_to_num(tab, nan=0.0).reshape(view)
    total = prod.sum()
    if total < 1.0 - 1e-9:
        flags.append("sparse_stratum")
    if total <= 0:
        raise EmptyGroup("g-formula has no support")
    return float(np.take(prod, yp, axis=axis[y]).sum() / total)


def path_specific_effect(
    d: Dataset,
    dag: MixedGraph,
    q: FairnessQuery,
    active_paths: Iterable[Sequence[str]],
    measure: str = "PSE",
    dag_id: int = 0,
) -> MeasureValue:
    """Effect transmitted along ``active_paths`` (directed ``A -> Y`` paths).

    Identified by the edge g-formula: children of ``A`` reached by an
    active edge see ``a1``, the others ``a0``; the all-``a0`` world is
    subtracted.  If the active set splits the paths that share a first
    edge, a node would have to transmit both values (a recanting witness)
    and the result is reported as not identifiable.  The degenerate
    partitions short-cut to 0 and to :func:`total_effect`.
    """
    a, y = q.sensitive, q.outcome
    paths_all = all_directed_paths(dag, a, y)
    active = {tuple(p) for p in active_paths}
    unknown = active - set(paths_all)
    if unknown:
        raise FairnessError(f"not directed A->Y paths of the graph: {sorted(unknown)}")
    if not active:
        return MeasureValue(measure, 0.0, dag_id, flags=["no_active_path"])
    if active == set(paths_all):
        te = total_effect(d, dag, q, dag_id=dag_id)
        return MeasureValue(measure, te.value, dag_id, flags=list(te.flags))
    on = _first_edge_closed(paths_all, active)
    if on is None:
        return MeasureValue(measure, None, dag_id, identifiable=False, flags=["recanting_witness"])
    a1, a0, yp = _codes(d, q)
    t = _Tables(d)
    flags: List[str] = []
    children = dag.children(a)
    treated = _g_formula(t, dag, a, y, yp, {c: (a1 if c in on else a0) for c in children}, flags)
    base = _g_formula(t, dag, a, y, yp, {c: a0 for c in children}, flags)
    return MeasureValue(measure, treated - base, dag_id, flags=sorted(set(flags)))


def indirect_and_explained(
    d: Dataset,
    dag: MixedGraph,
    q: FairnessQuery,
    roles: RoleAssignment,
    dag_id: int = 0,
) -> Tuple[MeasureValue, MeasureValue]:
    """Split indirect paths by whether they touch an explaining mediator.

    ED: paths with at least one explaining mediator.  ID: the other
    indirect paths.  The direct edge belongs to neither.
    """
    paths = all_directed_paths(dag, q.sensitive, q.outcome)
    indirect = [p for p in paths if len(p) > 2]
    explained = [p for p in indirect if any(roles.mediator_kind.get(m) == EXPLAINING for m in p[1:-1])]
    redlining = [p for p in indirect if p not in explained]
    return (
        path_specific_effect(d, dag, q, redlining, ID, dag_id),
        path_specific_effect(d, dag, q, explained, ED, dag_id),
    )


def _standardize(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    mu = np.average(x, axis=0, weights=w)
    sd = np.sqrt(np.average((x - mu) ** 2, axis=0, weights=w))
    return (x - mu) / np.where(sd > 0, sd, 1.0)


def ate_ipw(
    d: Dataset,
    q: FairnessQuery,
    covariates: Sequence[str] = (),
    dag_id: int = 0,
    iterations: int = 500,
    step: float = 0.1,
    clip: Tuple[float, float] = (0.01, 0.99),
) -> MeasureValue:
    """Inverse-propensity-weighted average effect of ``a1`` versus ``a0``.

    The propensity ``P(A = a1 | x)`` is a logistic regression fitted by
    ``iterations`` steps of gradient ascent on standardized features
    (categorical covariates one-hot, first level dropped).  Without
    covariates it is the group share, and the estimate equals the total
    variation.  Rows outside the two groups are ignored.
    """
    a1, a0, yp = _codes(d, q)
    ac = d.codes(q.sensitive)
    keep = (ac == a1) | (ac == a0)
    w = d.row_weights()[keep]
    t1 = (ac[keep] == a1).astype(float)
    yv = (d.codes(q.outcome)[keep] == yp).astype(float)
    if w[t1 == 1].sum() <= 0 or w[t1 == 0].sum() <= 0:
        raise EmptyGroup("one of the compared groups is empty")
    flags: List[str] = []
    feats = []
    for c in covariates:
        if d.is_categorical(c):
            codes = d.codes(c)[keep]
            feats.extend((codes == k).astype(float) for k in range(1, d.n_levels(c)))
        else:
            feats.append(d.column(c)[keep])
    if feats:
        x = _standardize(np.column_stack(feats), w)
        x = np.column_stack([np.ones(len(w)), x])
        beta = np.zeros(x.shape[1])
        wn = w / w.sum()
        for _ in range(iterations):
            e = 1.0 / (1.0 + np.exp(-(x @ beta)))
            grad = x.T @ (wn * (t1 - e))
            beta += step * grad
        if np.linalg.norm(grad) > 1e-3:
            flags.append("non_convergence")
        e = 1.0 / (1.0 + np.exp(-(x @ beta)))
    else:
        e = np.full(len(w), np.average(t1, weights=w))
    e = np.clip(e, *clip)
    val = np.average(t1 * yv / e, weights=w) - np.average((1 - t1) * yv / (1 - e), weights=w)
    return MeasureValue(ATE_IPW, float(val), dag_id, flags=flags)


# ---------------------------------------------------------------------------
# Equivalence-class ranges
# ---------------------------------------------------------------------------


@dataclass
class FairnessReport:
    query: FairnessQuery
    values: Dict[str, List[MeasureValue]]
    dags: List[MixedGraph]
    roles: List[RoleAssignment]
    flags: List[str] = field(default_factory=list)
    unresolved_paths: List[List[Tuple[str, ...]]] = field(default_factory=list)
    sign_tol: float = DEFAULT_SIGN_TOL

    def range(self, measure: str) -> Optional[Tuple[float, float]]:
        vals = [m.value for m in self.values.get(measure, []) if m.value is not None]
        return (min(vals), max(vals)) if vals else None

    def argrange(self, measure: str) -> Optional[Tuple[int, int]]:
        """DAG ids attaining the minimum and the maximum."""
        vals = [m for m in self.values.get(measure, []) if m.value is not None]
        if not vals:
            return None
        return min(vals, key=lambda m: m.value).dag, max(vals, key=lambda m: m.value).dag

    def sign(self, measure: str) -> str:
        r = self.range(measure)
        if r is None:
            return "undefined"
        lo, hi = r
        if lo > self.sign_tol:
            return "against"
        if hi < -self.sign_tol:
            return "in_favor"
        if -self.sign_tol <= lo and hi <= self.sign_tol:
            return "fair"
        return "mixed"

    def to_dict(self) -> dict:
        order = self.dags[0].nodes if self.dags else ()
        measures = {}
        for name in MEASURES:
            r = self.range(name)
            arg = self.argrange(name)
            measures[name] = {
                "values": [m.to_dict() for m in self.values.get(name, [])],
                "min": None if r is None else r[0],
                "max": None if r is None else r[1],
                "argmin_dag": None if arg is None else arg[0],
                "argmax_dag": None if arg is None else arg[1],
                "sign": self.sign(name),
            }
        return {
            "query": {
                "sensitive": self.query.sensitive,
                "outcome": self.query.outcome,
                "privileged": self.query.privileged,
                "protected": self.query.protected,
                "positive": self.query.positive,
            },
            "n_dags": len(self.dags),
            "dags": [
                {"id": k, "edges": [list(e) for e in g.directed_edges()], "roles": r.to_dict(order),
                 "unresolved_paths": [list(p) for p in u]}
                for k, (g, r, u) in enumerate(zip(self.dags, self.roles, self.unresolved_paths))
            ],
            "measures": measures,
            "flags": list(self.flags),
        }


def measures_for_dag(d: Dataset, dag: MixedGraph, q: FairnessQuery, dag_id: int = 0) -> Tuple[RoleAssignment, List[MeasureValue]]:
    """Every measure on one DAG."""
    roles = classify_roles(dag, q.sensitive, q.outcome, d.mediator_kinds)
    conf = [c for c in dag.nodes if c in roles.confounders]
    out = [MeasureValue(TV, total_variation(d, q), dag_id)]
    out.append(total_effect(d, dag, q, roles, dag_id))
    out.append(ate_ipw(d, q, conf, dag_id))
    out.append(natural_direct_effect(d, dag, q, roles, dag_id))
    out.extend(indirect_and_explained(d, dag, q, roles, dag_id))
    return roles, out


def unresolved_paths(dag: MixedGraph, q: FairnessQuery, roles: RoleAssignment) -> List[Tuple[str, ...]]:
    """Directed ``A -> Y`` paths not blocked by any explaining variable."""
    return [
        p for p in all_directed_paths(dag, q.sensitive, q.outcome)
        if not any(roles.mediator_kind.get(m) == EXPLAINING for m in p[1:-1])
    ]


def measure_range(
    graph: MixedGraph,
    d: Dataset,
    q: FairnessQuery,
    extension_cap: Optional[int] = DEFAULT_EXTENSION_CAP,
    discretize_bins: int = 5,
    sign_tol: float = DEFAULT_SIGN_TOL,
) -> FairnessReport:
    """Evaluate every measure on every DAG consistent with ``graph``.

    ``graph`` may be a DAG, a CPDAG or a PAG.  PAG circles are read as
    undetermined marks; bidirected edges have no DAG reading, so they are
    dropped and a flag names them.  Continuous columns are discretized by
    equal-frequency binning first.

    Raises
    ------
    LimitExceeded
        If the class has more than ``extension_cap`` members.
    EmptyClass
        If no DAG is consistent with ``graph``.
    """
    flags: List[str] = []
    if not d.all_categorical:
        d = d.discretize(discretize_bins)
        flags.append(f"discretized continuous columns into {discretize_bins} equal-frequency bins")
    d = d.select(list(graph.nodes))
    pdag = graph
    if any(CIRCLE in (e.mark_u, e.mark_v) or (e.mark_u is ARROW and e.mark_v is ARROW) for e in graph.edges):
        pdag, bidirected = pag_to_pdag(graph)
        for u, v in bidirected:
            flags.append(f"latent confounding between {u} and {v}: bidirected edge dropped, measures assume none")
    dags = enumerate_consistent_extensions(pdag, limit=extension_cap)
    if not dags:
        raise EmptyClass("no DAG is consistent with the graph")
    values: Dict[str, List[MeasureValue]] = {m: [] for m in MEASURES}
    roles_all, unresolved = [], []
    for k, dag in enumerate(dags):
        roles, vals = measures_for_dag(d, dag, q, k)
        roles_all.append(roles)
        unresolved.append(unresolved_paths(dag, q, roles))
        for mv in vals:
            values[mv.measure].append(mv)
    return FairnessReport(q, values, dags, roles_all, flags, unresolved, sign_tol)


__all__ = [
    "ATE_IPW",
    "DE",
    "ED",
    "ID",
    "MEASURES",
    "TE",
    "TV",
    "FairnessQuery",
    "FairnessReport",
    "MeasureValue",
    "RoleAssignment",
    "ate_ipw",
    "classify_roles",
    "indirect_and_explained",
    "measure_range",
    "measures_for_dag",
    "natural_direct_effect",
    "path_specific_effect",
    "total_effect",
    "total_variation",
    "unresolved_paths",
]
