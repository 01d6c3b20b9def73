"""FCI: PC skeleton followed by circle-mark orientation into a PAG."""

from __future__ import annotations

import collections
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .data import Dataset
from .graph import ARROW, CIRCLE, NO_KNOWLEDGE, TAIL, BackgroundKnowledge, MixedGraph, unshielded_triples
from .pc import SepsetMap, _SkeletonStats, pc_skeleton
from .stats import TestConfig

log = logging.getLogger(__name__)


@dataclass
class PagResult:
    pag: MixedGraph
    sepsets: SepsetMap
    y_structures: List[Tuple[str, str, str, str]] = field(default_factory=list)
    definite_edges: List[Tuple[str, str]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


class _Pag:
    """Mutable endpoint table whose marks only move away from Circle."""

    def __init__(self, g: MixedGraph):
        self.nodes = g.nodes
        self.idx = {n: i for i, n in enumerate(g.nodes)}
        self.m = g.marks_copy()
        self.changed = False

    def adj(self, u, v):
        return v in self.m[u]

    def at(self, u, v):
        """Mark at ``v`` on edge ``u``–``v``."""
        return self.m[u].get(v)

    def nbrs(self, u):
        return sorted(self.m[u], key=self.idx.__getitem__)

    def put(self, u, v, mark) -> bool:
        """Set the mark at ``v``; only a Circle may be overwritten."""
        cur = self.m[u][v]
        if cur is mark or cur is not CIRCLE:
            return False
        self.m[u][v] = mark
        self.changed = True
        return True

    def directed(self, u, v):
        return self.at(u, v) is ARROW and self.at(v, u) is TAIL

    def graph(self) -> MixedGraph:
        return MixedGraph._wrap(self.nodes, {u: dict(d) for u, d in self.m.items()})


def find_discriminating_path(pag: MixedGraph, d: str, y: str, c: str) -> Optional[Tuple[str, ...]]:
    """Shortest discriminating path ``<D, ..., X, C, Y>`` for ``C``, or None.

    Requirements: at least three edges; ``D`` not adjacent to ``Y``; every
    node strictly between ``D`` and ``C`` is a collider on the path and a
    parent of ``Y``.  Breadth-first from ``C`` so the result is the
    shortest such path, ties broken by node order.
    """
    if not pag.adjacent(c, y) or d in (c, y) or pag.adjacent(d, y):
        return None
    # queue holds partial paths [C, X1, X2, ...] read backwards from C
    queue = collections.deque()
    seen = {c, y}
    for x in pag.neighbors(c):
        if x in seen or x == d:
            continue
        if pag.mark(c, x) is ARROW and pag.is_directed(x, y):
            queue.append((c, x))
            seen.add(x)
    while queue:
        path = queue.popleft()
        x = path[-1]
        for w in pag.neighbors(x):
            if w in path or w == y or pag.mark(w, x) is not ARROW:
                continue
            if w == d:
                return tuple(reversed(path + (w,))) + (y,)
            if w in seen:
                continue
            if pag.mark(x, w) is ARROW and pag.is_directed(w, y):
                seen.add(w)
                queue.append(path + (w,))
    return None


def _rule1(p: _Pag) -> None:
    # a *-> b o-* c, a and c non-adjacent  =>  b -> c
    for b in p.nodes:
        for a in p.nbrs(b):
            if p.at(a, b) is not ARROW:
                continue
            for c in p.nbrs(b):
                if c == a or p.adj(a, c) or p.at(c, b) is not CIRCLE:
                    continue
                p.put(c, b, TAIL)
                p.put(b, c, ARROW)


def _rule2(p: _Pag) -> None:
    # a -> b *-> c  or  a *-> b -> c, with a *-o c  =>  a *-> c
    for a in p.nodes:
        for c in p.nbrs(a):
            if p.at(a, c) is not CIRCLE:
                continue
            for b in p.nbrs(a):
                if b == c or not p.adj(b, c):
                    continue
                if (p.directed(a, b) and p.at(b, c) is ARROW) or (p.at(a, b) is ARROW and p.directed(b, c)):
                    p.put(a, c, ARROW)
                    break


def _rule3(p: _Pag) -> None:
    # a *-> b <-* c, a *-o d o-* c, a and c non-adjacent, d *-o b  =>  d *-> b
    for b in p.nodes:
        into = [a for a in p.nbrs(b) if p.at(a, b) is ARROW]
        for d in p.nbrs(b):
            if p.at(d, b) is not CIRCLE:
                continue
            found = False
            for i, a in enumerate(into):
                for c in into[i + 1:]:
                    if d in (a, c) or p.adj(a, c):
                        continue
                    if p.adj(a, d) and p.adj(c, d) and p.at(a, d) is CIRCLE and p.at(c, d) is CIRCLE:
                        found = True
                        break
                if found:
                    break
            if found:
                p.put(d, b, ARROW)


def _rule4(p: _Pag, sepsets: SepsetMap) -> None:
    # discriminating path <D, ..., X, C, Y> with C o-* Y
    g = p.graph()
    for c in p.nodes:
        for y in p.nbrs(c):
            if p.at(y, c) is not CIRCLE:
                continue
            best = None
            for d in p.nodes:
                if d in (c, y) or p.adj(d, y):
                    continue
                path = find_discriminating_path(g, d, y, c)
                if path is not None and (best is None or len(path) < len(best)):
                    best = path
            if best is None:
                continue
            d, x = best[0], best[-3]
            sep = sepsets.get(d, y)
            if sep is not None and c in sep:
                p.put(y, c, TAIL)
                p.put(c, y, ARROW)
            else:
                p.put(x, c, ARROW)
                p.put(y, c, ARROW)
                p.put(c, y, ARROW)
            if p.changed:
                return


def fci_orient(
    skeleton: MixedGraph,
    sepsets: SepsetMap,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
) -> PagResult:
    """Orient a skeleton into a partial ancestral graph.

    Undirected input edges start as ``o-o`` (marks already present on
    other edges are kept, so the function is a no-op on its own output).
    Unshielded triples with ``C`` outside the separating set become
    ``X *-> C <-* Y``; tiers put an arrowhead at the later-tier end.  Rules
    1-4 then run to a fixed point.  Only Circle marks are ever changed.

    Rule 4 follows the usual convention: ``C`` in sepset(D, Y) gives
    ``C -> Y``, otherwise ``X <-> C <-> Y``.
    """
    m = skeleton.marks_copy()
    for u in m:
        for v in m[u]:
            if skeleton.is_undirected(u, v):
                m[u][v] = CIRCLE
    p = _Pag(MixedGraph._wrap(skeleton.nodes, m))
    warnings: List[str] = []

    for x, c, y in unshielded_triples(skeleton):
        z = sepsets.get(x, y)
        if z is not None and c not in z:
            p.put(x, c, ARROW)
            p.put(y, c, ARROW)

    for u, v in bk.required:
        if p.adj(u, v):
            p.put(v, u, TAIL)
            p.put(u, v, ARROW)
    if bk.tiers:
        for u in p.nodes:
            for v in p.nbrs(u):
                if bk._tier_violation(v, u):
                    # v is later than u, so v cannot be an ancestor of u
                    p.put(u, v, ARROW)

    while True:
        p.changed = False
        _rule1(p)
        _rule2(p)
        _rule3(p)
        if not p.changed:
            _rule4(p, sepsets)
        if not p.changed:
            break

    pag = p.graph()
    ys = detect_y_structures(pag)
    definite = sorted({(x, y) for _, _, x, y in ys}, key=lambda e: (pag.index(e[0]), pag.index(e[1])))
    return PagResult(pag, sepsets, ys, definite, warnings)


def detect_y_structures(pag: MixedGraph) -> List[Tuple[str, str, str, str]]:
    """Quadruples ``(C1, C2, X, Y)`` with ``C1 *-> X <-* C2`` and ``X *-> Y``.

    ``C1`` and ``C2`` must be non-adjacent to each other and to ``Y``, and
    the ``X`` end of ``X``–``Y`` must not be an arrowhead.  Each match
    certifies that ``X -> Y`` is unconfounded; the caller records it as a
    definite edge rather than rewriting marks.
    """
    idx = pag.index
    out = []
    for x in pag.nodes:
        into = [c for c in pag.neighbors(x) if pag.mark(c, x) is ARROW]
        for y in pag.neighbors(x):
            if pag.mark(x, y) is not ARROW or pag.mark(y, x) is ARROW:
                continue
            for i, c1 in enumerate(into):
                for c2 in into[i + 1:]:
                    if y in (c1, c2) or pag.adjacent(c1, c2):
                        continue
                    if pag.adjacent(c1, y) or pag.adjacent(c2, y):
                        continue
                    out.append((c1, c2, x, y))
    out.sort(key=lambda q: tuple(idx(n) for n in q))
    return out


def run_fci(
    data: Union[Dataset, Sequence[str], None],
    cfg: Optional[TestConfig] = None,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
) -> PagResult:
    """Skeleton search, PAG orientation and Y-structure annotation."""
    cfg = cfg or TestConfig()
    skeleton, sepsets = pc_skeleton(data, cfg, bk, _stats=_SkeletonStats())
    res = fci_orient(skeleton, sepsets, bk)
    for w in res.warnings:
        log.warning(w)
    return res
