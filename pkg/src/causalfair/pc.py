"""PC algorithm: skeleton search by conditional independence, then orientation."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .data import Dataset
from .errors import StatsError
from .graph import (
    ARROW,
    NO_KNOWLEDGE,
    TAIL,
    BackgroundKnowledge,
    MixedGraph,
    apply_meek_rules,
    unshielded_triples,
)
from .stats import CiTest, TestConfig, make_ci_test

log = logging.getLogger(__name__)


class SepsetMap:
    """Separating sets keyed by unordered node pair."""

    def __init__(self, entries: Optional[Dict[FrozenSet[str], FrozenSet[str]]] = None):
        self._d: Dict[FrozenSet[str], FrozenSet[str]] = {}
        for k, v in (entries or {}).items():
            self.set(*tuple(k), v)

    def set(self, x: str, y: str, z: Iterable[str]) -> None:
        z = frozenset(z)
        if x in z or y in z:
            raise ValueError("a separating set may not contain its own pair")
        self._d[frozenset((x, y))] = z

    def get(self, x: str, y: str) -> Optional[FrozenSet[str]]:
        return self._d.get(frozenset((x, y)))

    def __contains__(self, pair) -> bool:
        return frozenset(pair) in self._d

    def __len__(self) -> int:
        return len(self._d)

    def items(self) -> Iterator[Tuple[FrozenSet[str], FrozenSet[str]]]:
        return iter(self._d.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, SepsetMap) and self._d == other._d

    def to_dict(self, order: Sequence[str]) -> list:
        idx = {n: i for i, n in enumerate(order)}
        rows = []
        for pair, z in self._d.items():
            x, y = sorted(pair, key=idx.__getitem__)
            rows.append({"x": x, "y": y, "z": sorted(z, key=idx.__getitem__)})
        rows.sort(key=lambda r: (idx[r["x"]], idx[r["y"]]))
        return rows


@dataclass
class PcResult:
    cpdag: MixedGraph
    sepsets: SepsetMap
    tests_performed: int
    max_depth_reached: int
    warnings: List[str] = field(default_factory=list)


@dataclass
class _SkeletonStats:
    tests: int = 0
    depth: int = 0


def _resolve(data: Union[Dataset, Sequence[str], None], cfg: TestConfig) -> Tuple[Tuple[str, ...], CiTest]:
    if isinstance(data, Dataset):
        return data.names, make_ci_test(data, cfg)
    test = make_ci_test(None, cfg)
    nodes = tuple(data) if data is not None else tuple(test.nodes)
    return nodes, test


def pc_skeleton(
    data: Union[Dataset, Sequence[str], None],
    cfg: Optional[TestConfig] = None,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
    ci_test: Optional[CiTest] = None,
    _stats: Optional[_SkeletonStats] = None,
) -> Tuple[MixedGraph, SepsetMap]:
    """Learn the undirected skeleton and separating sets.

    Starts from the complete graph; at depth ``d`` each still-adjacent
    ordered pair ``(X, Y)`` is tested against every ``Z ⊆ adj(X) \\ {Y}``
    with ``|Z| = d`` in lexicographic order.  The first independence found
    removes the edge immediately and records ``Z``.

    ``data`` may be a :class:`Dataset` or, for oracle runs, a list of node
    names.  Pairs forbidden in both directions start removed with an empty
    separating set; required edges are never tested.
    """
    cfg = cfg or TestConfig()
    if ci_test is None:
        nodes, ci_test = _resolve(data, cfg)
    else:
        nodes = data.names if isinstance(data, Dataset) else tuple(data)
    stats = _stats if _stats is not None else _SkeletonStats()
    index = {n: i for i, n in enumerate(nodes)}
    adj = {n: set(nodes) - {n} for n in nodes}
    sepsets = SepsetMap()
    for x, y in itertools.combinations(nodes, 2):
        if bk.forbids(x, y) and bk.forbids(y, x):
            adj[x].discard(y)
            adj[y].discard(x)
            sepsets.set(x, y, ())

    def protected(x, y):
        return bk.requires(x, y) or bk.requires(y, x)

    depth = 0
    while any(len(adj[x]) - 1 >= depth for x in nodes for y in adj[x] if not protected(x, y)):
        stats.depth = depth
        for x in nodes:
            for y in sorted(adj[x], key=index.__getitem__):
                if y not in adj[x] or protected(x, y):
                    continue
                candidates = sorted(adj[x] - {y}, key=index.__getitem__)
                if len(candidates) < depth:
                    continue
                for z in itertools.combinations(candidates, depth):
                    try:
                        res = ci_test(x, y, z)
                    except StatsError as exc:
                        exc.context = {"pair": [x, y], "depth": depth, "z": list(z)}
                        raise
                    stats.tests += 1
                    if res.independent:
                        adj[x].discard(y)
                        adj[y].discard(x)
                        sepsets.set(x, y, z)
                        break
        depth += 1
    skeleton = MixedGraph.from_undirected(
        nodes, ((x, y) for x, y in itertools.combinations(nodes, 2) if y in adj[x])
    )
    return skeleton, sepsets


def pc_orient(
    skeleton: MixedGraph,
    sepsets: SepsetMap,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
    warnings: Optional[List[str]] = None,
) -> MixedGraph:
    """Orient a skeleton into a CPDAG.

    1. Unshielded triples ``X - C - Y`` with ``C`` outside sepset(X, Y)
       become colliders.
    2. Background knowledge orients remaining edges (tiers, required,
       one-way forbidden).
    3. Rules 1-3 run to a fixed point.

    Two demands for opposite arrows on one edge leave it undirected and
    append a message to ``warnings``; nothing is silently overwritten.
    Already-directed edges in the input are kept, so the operation is
    idempotent on its own output.
    """
    if warnings is None:
        warnings = []
    m = skeleton.marks_copy()
    nodes = skeleton.nodes
    frozen = set()

    def undirected(u, v):
        return m[u][v] is TAIL and m[v][u] is TAIL

    proposals: Dict[FrozenSet[str], set] = {}
    for x, c, y in unshielded_triples(skeleton):
        z = sepsets.get(x, y)
        if z is None:
            continue
        if c not in z:
            for a in (x, y):
                proposals.setdefault(frozenset((a, c)), set()).add((a, c))
    for key, dirs in sorted(proposals.items(), key=lambda kv: sorted(skeleton.index(n) for n in kv[0])):
        u, v = sorted(key, key=skeleton.index)
        if len(dirs) > 1:
            if undirected(u, v):
                frozen.add(key)
                warnings.append(f"conflicting collider orientations on {u}-{v}; left undirected")
            continue
        (a, b), = dirs
        if undirected(a, b):
            m[a][b] = ARROW
            m[b][a] = TAIL
        elif m[a][b] is TAIL and m[b][a] is ARROW:
            warnings.append(f"collider demands {a}->{b} but edge is {b}->{a}; kept")

    if bk:
        for u in nodes:
            for v in list(m[u]):
                if skeleton.index(v) < skeleton.index(u):
                    continue
                want = None
                if bk.requires(u, v) or (bk.forbids(v, u) and not bk.forbids(u, v)):
                    want = (u, v)
                elif bk.requires(v, u) or (bk.forbids(u, v) and not bk.forbids(v, u)):
                    want = (v, u)
                if want is None:
                    continue
                a, b = want
                if undirected(a, b) and frozenset((a, b)) not in frozen:
                    m[a][b] = ARROW
                    m[b][a] = TAIL
                elif m[b][a] is ARROW and m[a][b] is TAIL:
                    m[b][a] = TAIL
                    frozen.add(frozenset((a, b)))
                    warnings.append(f"background knowledge demands {a}->{b} against an inferred collider; left undirected")

    closed, conflicts = apply_meek_rules(MixedGraph._wrap(nodes, m), frozen)
    for u, v in conflicts:
        warnings.append(f"orientation rules demand both directions on {u}-{v}; left undirected")
    return closed


def run_pc(
    data: Union[Dataset, Sequence[str], None],
    cfg: Optional[TestConfig] = None,
    bk: BackgroundKnowledge = NO_KNOWLEDGE,
) -> PcResult:
    """Skeleton search followed by orientation; deterministic."""
    cfg = cfg or TestConfig()
    stats = _SkeletonStats()
    skeleton, sepsets = pc_skeleton(data, cfg, bk, _stats=stats)
    warnings: List[str] = []
    cpdag = pc_orient(skeleton, sepsets, bk, warnings)
    for w in warnings:
        log.warning(w)
    return PcResult(cpdag, sepsets, stats.tests, stats.depth, warnings)
