"""DirectLiNGAM: causal ordering by residual independence, then regression."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .data import Dataset
from .errors import NotApplicable
from .graph import NO_KNOWLEDGE, BackgroundKnowledge, MixedGraph
from .stats import mutual_information, ols_arrays, residualize

DEFAULT_THRESHOLD = 0.05


@dataclass
class CausalOrder:
    order: List[str]
    # per step: list of (candidate, T) for every eligible candidate
    t_scores: List[List[Tuple[str, float]]] = field(default_factory=list)


@dataclass
class WeightedDag:
    """``b[j, i]`` is the coefficient of ``names[i]`` in the equation of ``names[j]``."""

    b: np.ndarray
    threshold: float
    names: Tuple[str, ...]

    def to_graph(self) -> MixedGraph:
        arcs = [(self.names[i], self.names[j]) for j, i in zip(*np.nonzero(self.b))]
        return MixedGraph.from_directed(self.names, arcs)

    def coefficient(self, parent: str, child: str) -> float:
        return float(self.b[self.names.index(child), self.names.index(parent)])


@dataclass
class LingamResult:
    weights: WeightedDag
    order: CausalOrder
    graph: MixedGraph


def _require_continuous(d: Dataset) -> None:
    if not d.all_continuous:
        raise NotApplicable("DirectLiNGAM requires continuous data (non-Gaussian linear model)")


def _t_stat(work: np.ndarray, j: int, cols: Sequence[int]) -> float:
    xj = work[:, j]
    return float(sum(mutual_information(xj, residualize(work[:, i], xj)) for i in cols if i != j))


def t_statistic(d: Dataset, j: str, u: Sequence[str]) -> float:
    """``T(X_j; U) = sum over i in U \\ {j} of I(X_j, r_i^(j))``.

    Small values mean ``X_j`` looks exogenous relative to ``U``.
    """
    _require_continuous(d)
    names = list(u)
    if j not in names:
        raise ValueError(f"{j!r} must be a member of U")
    work = d.matrix(names)
    return _t_stat(work, names.index(j), range(len(names)))


def _eligible(remaining: List[str], prior: BackgroundKnowledge) -> List[str]:
    # a candidate may not be placed before a variable that must precede it
    out = []
    for j in remaining:
        blocked = False
        for i in remaining:
            if i == j:
                continue
            if prior._tier_violation(j, i) or prior.requires(i, j):
                blocked = True
                break
        if not blocked:
            out.append(j)
    return out or list(remaining)


def causal_order(d: Dataset, prior: BackgroundKnowledge = NO_KNOWLEDGE) -> CausalOrder:
    """Repeatedly pick the most exogenous variable and regress it out.

    The working matrix starts as the data; after each pick every remaining
    column is replaced by its residual on the picked one.  Background
    knowledge only narrows which variables may be picked at a step.
    """
    _require_continuous(d)
    names = list(d.names)
    work = np.array(d.values, dtype=float)
    pos = {n: k for k, n in enumerate(names)}
    remaining = list(names)
    result = CausalOrder([])
    while remaining:
        if len(remaining) == 1:
            result.order.append(remaining[0])
            result.t_scores.append([(remaining[0], 0.0)])
            break
        cols = [pos[n] for n in remaining]
        scores = [(j, _t_stat(work, pos[j], cols)) for j in _eligible(remaining, prior)]
        m = min(scores, key=lambda s: s[1])[0]
        result.order.append(m)
        result.t_scores.append(scores)
        remaining.remove(m)
        xm = work[:, pos[m]]
        for i in remaining:
            work[:, pos[i]] = residualize(work[:, pos[i]], xm)
    return result


def estimate_adjacency(
    d: Dataset,
    order: CausalOrder,
    threshold: float = DEFAULT_THRESHOLD,
    prior: BackgroundKnowledge = NO_KNOWLEDGE,
) -> WeightedDag:
    """Regress each variable on its predecessors in ``order``; prune small weights.

    Uses the original columns.  Coefficients with absolute value below
    ``threshold`` are zeroed, as are forbidden edges; required edges are
    kept regardless of size.
    """
    _require_continuous(d)
    names = tuple(d.names)
    if sorted(order.order) != sorted(names):
        raise ValueError("order must be a permutation of the dataset's variables")
    idx = {n: k for k, n in enumerate(names)}
    b = np.zeros((len(names), len(names)))
    for k, child in enumerate(order.order):
        preds = order.order[:k]
        if not preds:
            continue
        coef, _, _ = ols_arrays(d.column(child), d.matrix(preds))
        for parent, c in zip(preds, coef):
            if prior.forbids(parent, child):
                continue
            if abs(c) < threshold and not prior.requires(parent, child):
                continue
            b[idx[child], idx[parent]] = c
    return WeightedDag(b, threshold, names)


def run_direct_lingam(
    d: Dataset,
    prior: BackgroundKnowledge = NO_KNOWLEDGE,
    threshold: float = DEFAULT_THRESHOLD,
) -> LingamResult:
    """Causal ordering followed by pruned regression; output is a DAG."""
    if d.p == 0:
        order = CausalOrder([])
        w = WeightedDag(np.zeros((0, 0)), threshold, ())
        return LingamResult(w, order, MixedGraph.empty(()))
    order = causal_order(d, prior)
    w = estimate_adjacency(d, order, threshold, prior)
    return LingamResult(w, order, w.to_graph())
