"""Greedy equivalence search over CPDAGs with a decomposable BIC score."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .data import Dataset
from .errors import LimitExceeded, MixedFamily
from .graph import (
    ARROW,
    NO_KNOWLEDGE,
    TAIL,
    BackgroundKnowledge,
    MixedGraph,
    apply_meek_rules,
    complete_to_cpdag,
    enumerate_consistent_extensions,
    extend_pdag,
)
from .stats import BicScorer

log = logging.getLogger(__name__)

FORWARD = "forward"
BACKWARD = "backward"

# extensions examined per state before falling back to a single one
GES_EXTENSION_CAP = 256


@dataclass
class Transition:
    op: str
    x: str
    y: str
    delta: float


@dataclass
class GesState:
    cpdag: MixedGraph
    score: float
    phase: str = FORWARD
    steps: List[Transition] = field(default_factory=list)


@dataclass
class Candidate:
    cpdag: MixedGraph
    delta: float
    x: str
    y: str

    def key(self, g: MixedGraph):
        return (-self.delta, g.index(self.x), g.index(self.y))


def _extensions(cpdag: MixedGraph, cap: int) -> List[MixedGraph]:
    try:
        return enumerate_consistent_extensions(cpdag, limit=cap)
    except LimitExceeded:
        return [extend_pdag(cpdag)]


def _complete(dag: MixedGraph, bk: BackgroundKnowledge) -> MixedGraph:
    """CPDAG of ``dag`` with undirected edges oriented as ``bk`` demands, Meek-closed.

    ``dag`` itself respects ``bk``, so the result is a PDAG it extends.
    """
    cpdag = complete_to_cpdag(dag)
    if not bk:
        return cpdag
    g = cpdag
    for u, v in cpdag.undirected_edges():
        if bk.requires(u, v) or (bk.forbids(v, u) and not bk.forbids(u, v)):
            g = g.with_edge(u, v, TAIL, ARROW)
        elif bk.requires(v, u) or (bk.forbids(u, v) and not bk.forbids(v, u)):
            g = g.with_edge(v, u, TAIL, ARROW)
    return g if g is cpdag else apply_meek_rules(g)[0]


def _as_scorer(s: Union[BicScorer, Dataset]) -> BicScorer:
    return BicScorer(s) if isinstance(s, Dataset) else s


def _collect(cands: Dict[MixedGraph, Candidate], c: Candidate, ref: MixedGraph) -> None:
    old = cands.get(c.cpdag)
    if old is None or c.key(ref) < old.key(ref):
        cands[c.cpdag] = c


def forward_transitions(
    state: GesState,
    scorer: Union[BicScorer, Dataset],
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
    cap: int = GES_EXTENSION_CAP,
) -> List[Candidate]:
    """Single-edge additions to DAG members of the current class.

    For every consistent extension (or one extension when the class is
    larger than ``cap``) and every non-adjacent ordered pair, add
    ``X -> Y`` when the result stays acyclic and is not forbidden, then
    complete to a CPDAG.  The score change is the one local term at ``Y``.
    Candidates reaching the same CPDAG are merged, keeping the best key.
    """
    scorer = _as_scorer(scorer)
    g = state.cpdag
    cands: Dict[MixedGraph, Candidate] = {}
    for dag in _extensions(g, cap):
        for x in g.nodes:
            for y in g.nodes:
                if x == y or dag.adjacent(x, y) or bk.forbids(x, y):
                    continue
                if x in dag.descendants(y):
                    continue
                pa = dag.parents(y)
                delta = scorer(y, pa + (x,)) - scorer(y, pa)
                new = _complete(dag.with_edge(x, y, TAIL, ARROW), bk)
                _collect(cands, Candidate(new, delta, x, y), g)
    return sorted(cands.values(), key=lambda c: c.key(g))


def backward_transitions(
    state: GesState,
    scorer: Union[BicScorer, Dataset],
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
    cap: int = GES_EXTENSION_CAP,
) -> List[Candidate]:
    """Single-edge deletions from DAG members of the current class."""
    scorer = _as_scorer(scorer)
    g = state.cpdag
    cands: Dict[MixedGraph, Candidate] = {}
    for dag in _extensions(g, cap):
        for x, y in dag.directed_edges():
            if bk.requires(x, y):
                continue
            pa = dag.parents(y)
            rest = tuple(p for p in pa if p != x)
            delta = scorer(y, rest) - scorer(y, pa)
            new = _complete(dag.without_edge(x, y), bk)
            _collect(cands, Candidate(new, delta, x, y), g)
    return sorted(cands.values(), key=lambda c: c.key(g))


def run_ges(
    d: Dataset,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
    cap: int = GES_EXTENSION_CAP,
    max_steps: Optional[int] = None,
) -> GesState:
    """Forward phase to a local maximum, then backward phase.

    Each step takes the best transition; only strict improvements are
    accepted, ties are broken by ``(X, Y)`` node order.

    Raises
    ------
    MixedFamily
        If the dataset mixes continuous and categorical columns.
    """
    if not (d.all_continuous or d.all_categorical):
        raise MixedFamily("BIC search needs all-continuous or all-categorical data")
    scorer = BicScorer(d)
    empty = MixedGraph.empty(d.names)
    state = GesState(empty, sum(scorer(v, ()) for v in d.names))
    for phase, gen in ((FORWARD, forward_transitions), (BACKWARD, backward_transitions)):
        state.phase = phase
        n = 0
        while max_steps is None or n < max_steps:
            cands = gen(state, scorer, bk, cap)
            if not cands or not cands[0].delta > 0:
                break
            best = cands[0]
            state.cpdag = best.cpdag
            state.score += best.delta
            state.steps.append(Transition(phase, best.x, best.y, best.delta))
            log.debug("%s %s->%s delta=%.4f", phase, best.x, best.y, best.delta)
            n += 1
    return state
