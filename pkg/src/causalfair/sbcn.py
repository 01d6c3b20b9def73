"""Suppes-Bayes causal networks over (variable = value) Bernoulli nodes."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from .data import Dataset
from .errors import NotApplicable
from .graph import MixedGraph, _find_cycle

log = logging.getLogger(__name__)

STALL_SWEEP_AFTER = 200
DEFAULT_MAX_ITERS = 20000


class BernoulliNode(NamedTuple):
    variable: str
    value: str

    def __str__(self) -> str:
        return f"{self.variable}={self.value}"


Edge = Tuple[BernoulliNode, BernoulliNode]


@dataclass
class SuppesResult:
    candidates: Dict[Edge, float]
    nodes: List[BernoulliNode]
    undefined: List[BernoulliNode] = field(default_factory=list)


@dataclass
class SbcnGraph:
    nodes: List[BernoulliNode]
    weights: Dict[Edge, float]
    score: float = 0.0
    trajectory: List[float] = field(default_factory=list)

    def outgoing(self, a: BernoulliNode) -> List[Tuple[BernoulliNode, float]]:
        return [(y, w) for (x, y), w in self.weights.items() if x == a]

    def node(self, variable: str, value) -> BernoulliNode:
        node = BernoulliNode(variable, str(value))
        if node not in self.nodes:
            raise KeyError(f"no node {node}")
        return node

    def to_dict(self) -> dict:
        pos = {n: i for i, n in enumerate(self.nodes)}
        edges = sorted(self.weights.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]]))
        return {
            "nodes": [str(n) for n in self.nodes],
            "edges": [{"from": str(a), "to": str(y), "weight": w} for (a, y), w in edges],
            "score": self.score,
        }


def _bernoulli(d: Dataset) -> Tuple[List[BernoulliNode], np.ndarray]:
    if not d.all_categorical:
        raise NotApplicable("SBCN needs categorical data; discretize continuous columns first")
    nodes, cols = [], []
    w = d.row_weights()
    for name in d.names:
        codes = d.codes(name)
        for k, lab in enumerate(d.levels(name)):
            col = codes == k
            if w[col].sum() > 0:
                nodes.append(BernoulliNode(name, lab))
                cols.append(col)
    return nodes, np.column_stack(cols) if cols else np.zeros((d.n, 0), dtype=bool)


def _raising(y: np.ndarray, a: np.ndarray, w: np.ndarray) -> Optional[float]:
    """``P(y | a) - P(y | not a)`` or None when a conditional is undefined."""
    wa, wn = w[a].sum(), w[~a].sum()
    if wa <= 0 or wn <= 0:
        return None
    return float(w[a & y].sum() / wa - w[~a & y].sum() / wn)


def suppes_filter(d: Dataset, tiers: Optional[Mapping[str, int]] = None) -> SuppesResult:
    """Edges ``a -> y`` with temporal priority and probability raising.

    ``a`` may cause ``y`` when ``tier(a) <= tier(y)`` and
    ``P(y | a) > P(y | not a)``.  Variables without a tier sit in tier 0.
    Nodes whose complement never occurs are reported as undefined and take
    part in no edge.
    """
    tiers = dict(d.tiers if tiers is None else tiers)
    nodes, b = _bernoulli(d)
    w = d.row_weights()
    cand: Dict[Edge, float] = {}
    undefined = [n for j, n in enumerate(nodes) if w[~b[:, j]].sum() <= 0]
    for i, a in enumerate(nodes):
        for j, y in enumerate(nodes):
            if a.variable == y.variable:
                continue
            if tiers.get(a.variable, 0) > tiers.get(y.variable, 0):
                continue
            r = _raising(b[:, j], b[:, i], w)
            if r is not None and r > 0:
                cand[(a, y)] = r
    return SuppesResult(cand, nodes, undefined)


class _FamilyScore:
    """Bernoulli log-likelihood per node given a set of parent nodes."""

    def __init__(self, b: np.ndarray, w: np.ndarray):
        self.b = b
        self.w = w
        self.penalty = 0.5 * np.log(w.sum())
        self._cache: Dict[Tuple[int, frozenset], float] = {}

    def ll(self, j: int, parents: frozenset) -> float:
        key = (j, parents)
        val = self._cache.get(key)
        if val is not None:
            return val
        pa = sorted(parents)
        cfg = (self.b[:, pa].astype(np.intp) @ (1 << np.arange(len(pa)))) if pa else np.zeros(len(self.w), dtype=np.intp)
        y = self.b[:, j].astype(np.intp)
        counts = np.bincount(cfg * 2 + y, weights=self.w, minlength=2 << len(pa)).reshape(-1, 2)
        tot = counts.sum(axis=1, keepdims=True)
        mask = counts > 0
        val = float(np.sum(counts[mask] * np.log((counts / np.where(tot > 0, tot, 1.0))[mask])))
        self._cache[key] = val
        return val


def _creates_cycle(children: Dict[int, Set[int]], a: int, y: int) -> bool:
    # adding a -> y closes a cycle iff a is reachable from y
    stack, seen = [y], {y}
    while stack:
        u = stack.pop()
        if u == a:
            return True
        for c in children[u]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def sbcn_hill_climb(
    d: Dataset,
    candidates: SuppesResult,
    max_iters: int = DEFAULT_MAX_ITERS,
    rng_seed: int = 0,
) -> SbcnGraph:
    """Stochastic hill climbing of ``LL - (log n / 2) * |E|`` over candidate edges.

    Starts empty; each iteration draws one random neighbour (add an
    acyclic candidate edge or remove a present one) and accepts it only on
    a strict score increase.  After ``STALL_SWEEP_AFTER`` consecutive
    rejections every neighbour is scored; the best improving one is taken,
    and if none improves the search stops.
    """
    nodes, b = _bernoulli(d)
    pos = {n: i for i, n in enumerate(nodes)}
    w = d.row_weights()
    fam = _FamilyScore(b, w)
    cand = sorted((pos[a], pos[y]) for (a, y) in candidates.candidates if a in pos and y in pos)
    parents: Dict[int, Set[int]] = {j: set() for j in range(len(nodes))}
    children: Dict[int, Set[int]] = {j: set() for j in range(len(nodes))}
    score = sum(fam.ll(j, frozenset()) for j in range(len(nodes)))
    trajectory = [score]
    rng = np.random.default_rng(rng_seed)

    def delta(a, y):
        cur = frozenset(parents[y])
        if a in cur:
            return fam.ll(y, cur - {a}) - fam.ll(y, cur) + fam.penalty
        if _creates_cycle(children, a, y):
            return None
        return fam.ll(y, cur | {a}) - fam.ll(y, cur) - fam.penalty

    def apply(a, y, dlt):
        nonlocal score
        if a in parents[y]:
            parents[y].discard(a)
            children[a].discard(y)
        else:
            parents[y].add(a)
            children[a].add(y)
        score += dlt
        trajectory.append(score)

    rejections = 0
    for _ in range(max_iters):
        if not cand:
            break
        a, y = cand[int(rng.integers(len(cand)))]
        dlt = delta(a, y)
        if dlt is not None and dlt > 0:
            apply(a, y, dlt)
            rejections = 0
            continue
        rejections += 1
        if rejections >= STALL_SWEEP_AFTER:
            best = None
            for a, y in cand:
                dlt = delta(a, y)
                if dlt is not None and dlt > 0 and (best is None or dlt > best[2]):
                    best = (a, y, dlt)
            if best is None:
                break
            apply(*best)
            rejections = 0

    weights = {}
    for y in range(len(nodes)):
        for a in sorted(parents[y]):
            weights[(nodes[a], nodes[y])] = _raising(b[:, y], b[:, a], w)
    return SbcnGraph(nodes, weights, score, trajectory)


def learn_sbcn(d: Dataset, max_iters: int = DEFAULT_MAX_ITERS, rng_seed: int = 0) -> SbcnGraph:
    return sbcn_hill_climb(d, suppes_filter(d), max_iters, rng_seed)


def sbcn_bic(d: Dataset, g: SbcnGraph) -> float:
    """Score of an arbitrary SBCN edge set, recomputed from scratch."""
    nodes, b = _bernoulli(d)
    pos = {n: i for i, n in enumerate(nodes)}
    fam = _FamilyScore(b, d.row_weights())
    parents: Dict[int, Set[int]] = {j: set() for j in range(len(nodes))}
    for a, y in g.weights:
        parents[pos[y]].add(pos[a])
    return sum(fam.ll(j, frozenset(p)) for j, p in parents.items()) - fam.penalty * len(g.weights)


# ---------------------------------------------------------------------------
# Random walks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkConfig:
    delta_plus: BernoulliNode
    delta_minus: BernoulliNode
    n_walks: int = 10000
    max_restarts: int = 100
    rng_seed: int = 0
    max_steps: int = 100000

    def __post_init__(self):
        if self.n_walks < 1:
            raise ValueError("n_walks must be at least 1")
        if self.delta_plus == self.delta_minus:
            raise ValueError("the two decision nodes must differ")


class WalkResult(NamedTuple):
    ds_minus: float
    ds_plus: float
    unresolved: float
    minus: int
    plus: int
    unresolved_count: int
    n_walks: int
    flag: Optional[str] = None


def transition_matrix(g: SbcnGraph) -> Tuple[List[BernoulliNode], np.ndarray]:
    """Row-stochastic ``p(x, y) = W(x, y) / sum_z W(x, z)``; sink rows are zero."""
    nodes = list(g.nodes)
    pos = {n: i for i, n in enumerate(nodes)}
    p = np.zeros((len(nodes), len(nodes)))
    for (a, y), wt in g.weights.items():
        p[pos[a], pos[y]] = wt
    tot = p.sum(axis=1, keepdims=True)
    return nodes, np.divide(p, tot, out=np.zeros_like(p), where=tot > 0)


def _reachable(p: np.ndarray, src: int) -> Set[int]:
    seen, stack = {src}, [src]
    while stack:
        u = stack.pop()
        for v in np.nonzero(p[u])[0]:
            if int(v) not in seen:
                seen.add(int(v))
                stack.append(int(v))
    return seen


def random_walk_score(g: SbcnGraph, v: BernoulliNode, cfg: WalkConfig) -> WalkResult:
    """Fraction of weighted random walks from ``v`` that hit ``delta_minus`` first.

    A walk at a node without outgoing edges restarts from ``v``; a walk
    that exceeds ``max_restarts`` restarts (or ``max_steps`` moves) is
    counted as unresolved.  All walks advance together, one step per
    round, drawing their uniforms from one seeded generator.
    """
    nodes, p = transition_matrix(g)
    pos = {n: i for i, n in enumerate(nodes)}
    for n in (v, cfg.delta_plus, cfg.delta_minus):
        if n not in pos:
            raise KeyError(f"node {n} is not in the graph")
    start, dm, dp = pos[v], pos[cfg.delta_minus], pos[cfg.delta_plus]
    n = cfg.n_walks
    if start == dm:
        return WalkResult(1.0, 0.0, 0.0, n, 0, 0, n)
    if start == dp:
        return WalkResult(0.0, 1.0, 0.0, 0, n, 0, n)
    reach = _reachable(p, start)
    if dm not in reach and dp not in reach:
        return WalkResult(0.0, 0.0, 1.0, 0, 0, n, n, "unreachable")

    cum = np.cumsum(p, axis=1)
    sink = p.sum(axis=1) == 0
    rng = np.random.default_rng(cfg.rng_seed)
    state = np.full(n, start)
    restarts = np.zeros(n, dtype=np.int64)
    outcome = np.zeros(n, dtype=np.int8)  # 0 running, 1 minus, 2 plus, 3 unresolved
    active = np.arange(n)
    for _ in range(cfg.max_steps):
        if active.size == 0:
            break
        cur = state[active]
        stuck = sink[cur]
        if stuck.any():
            idx = active[stuck]
            restarts[idx] += 1
            state[idx] = start
            over = idx[restarts[idx] > cfg.max_restarts]
            outcome[over] = 3
        moving = active[~stuck]
        u = rng.random(moving.size)
        rows = cum[state[moving]]
        nxt = (rows < u[:, None] * rows[:, -1:]).sum(axis=1)
        state[moving] = np.minimum(nxt, len(nodes) - 1)
        outcome[moving[state[moving] == dm]] = 1
        outcome[moving[state[moving] == dp]] = 2
        active = active[outcome[active] == 0]
    outcome[active] = 3
    minus = int(np.sum(outcome == 1))
    plus = int(np.sum(outcome == 2))
    unres = n - minus - plus
    return WalkResult(minus / n, plus / n, unres / n, minus, plus, unres, n)


# ---------------------------------------------------------------------------
# Variable-level view
# ---------------------------------------------------------------------------


def sbcn_as_causal_graph(
    g: SbcnGraph,
    variables: Optional[Sequence[str]] = None,
    warnings: Optional[List[str]] = None,
) -> MixedGraph:
    """Collapse value-level edges to a DAG over variables.

    A variable edge exists when any value-level edge joins the pair.  If
    both directions occur, the one with more total weight wins and a
    warning is appended; exact ties keep the direction that follows the
    variable order.  Should the result contain a directed cycle, its
    lightest edge is dropped (again with a warning) until none remain.
    """
    if warnings is None:
        warnings = []
    if variables is None:
        variables = list(dict.fromkeys(n.variable for n in g.nodes))
    variables = list(variables)
    idx = {v: i for i, v in enumerate(variables)}
    total: Dict[Tuple[str, str], float] = {}
    for (a, y), wt in g.weights.items():
        key = (a.variable, y.variable)
        total[key] = total.get(key, 0.0) + wt
    chosen: Dict[Tuple[str, str], float] = {}
    for (u, v), wt in sorted(total.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]])):
        if (v, u) in chosen or (u, v) in chosen:
            continue
        back = total.get((v, u))
        if back is None:
            chosen[(u, v)] = wt
            continue
        keep = (u, v) if (wt > back or (wt == back and idx[u] < idx[v])) else (v, u)
        chosen[keep] = total[keep]
        warnings.append(f"value-level edges disagree on {u}-{v} ({wt:.3f} vs {back:.3f}); kept {keep[0]}->{keep[1]}")
        log.warning(warnings[-1])
    while True:
        children = {v: [b for (a, b) in chosen if a == v] for v in variables}
        cyc = _find_cycle(variables, children)
        if cyc is None:
            break
        arcs = list(zip(cyc[:-1], cyc[1:]))
        weakest = min(arcs, key=lambda e: (chosen[e], idx[e[0]], idx[e[1]]))
        del chosen[weakest]
        warnings.append(f"dropped {weakest[0]}->{weakest[1]} to break a cycle among variables")
        log.warning(warnings[-1])
    return MixedGraph.from_directed(variables, sorted(chosen, key=lambda e: (idx[e[0]], idx[e[1]])))


def audit_edges(d: Dataset, g: SbcnGraph, tiers: Optional[Mapping[str, int]] = None) -> List[Edge]:
    """Edges that fail temporal priority or probability raising on ``d``."""
    tiers = dict(d.tiers if tiers is None else tiers)
    nodes, b = _bernoulli(d)
    pos = {n: i for i, n in enumerate(nodes)}
    w = d.row_weights()
    bad = []
    for (a, y) in g.weights:
        r = _raising(b[:, pos[y]], b[:, pos[a]], w)
        if tiers.get(a.variable, 0) > tiers.get(y.variable, 0) or r is None or not r > 0:
            bad.append((a, y))
    return bad


__all__ = [
    "BernoulliNode",
    "SbcnGraph",
    "SuppesResult",
    "WalkConfig",
    "WalkResult",
    "audit_edges",
    "learn_sbcn",
    "random_walk_score",
    "sbcn_as_causal_graph",
    "sbcn_bic",
    "sbcn_hill_climb",
    "suppes_filter",
    "transition_matrix",
]
