"""Mixed-mark graphs and the structural algorithms shared by every learner.

A single :class:`MixedGraph` type represents skeletons, CPDAGs, PAGs and
DAGs.  Each edge carries one :class:`EdgeMark` per endpoint, so ``X -> Y`` is
``(X, Y, TAIL, ARROW)``, ``X o-o Y`` is ``(X, Y, CIRCLE, CIRCLE)`` and so on.

Node order is significant: it is the canonical order used for every
tie-break (canonical edge orientation, sink selection, enumeration order).
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import CyclicGraph, GraphError, LimitExceeded, NotExtendable

DEFAULT_EXTENSION_CAP = 4096


class EdgeMark(enum.Enum):
    TAIL = "tail"
    ARROW = "arrow"
    CIRCLE = "circle"


TAIL = EdgeMark.TAIL
ARROW = EdgeMark.ARROW
CIRCLE = EdgeMark.CIRCLE


class Edge(NamedTuple):
    u: str
    v: str
    mark_u: EdgeMark
    mark_v: EdgeMark


Marks = Dict[str, Dict[str, EdgeMark]]


class MixedGraph:
    """Immutable graph whose edges carry a mark at each endpoint.

    Parameters
    ----------
    nodes : sequence of str
        Node identifiers; their order is the canonical order.
    edges : iterable of (u, v, mark_u, mark_v)
        At most one edge per unordered pair, no self-loops.

    Examples
    --------
    >>> g = MixedGraph.from_directed("XYZ", [("X", "Y"), ("Z", "Y")])
    >>> g.parents("Y")
    ('X', 'Z')
    """

    __slots__ = ("_nodes", "_index", "_marks", "_hash")

    def __init__(self, nodes: Sequence[str], edges: Iterable[Tuple[str, str, EdgeMark, EdgeMark]] = ()):
        nodes = tuple(nodes)
        index = {n: i for i, n in enumerate(nodes)}
        if len(index) != len(nodes):
            raise GraphError("duplicate node names")
        marks: Marks = {n: {} for n in nodes}
        for u, v, mu, mv in edges:
            if u not in index or v not in index:
                raise GraphError(f"edge {u!r}-{v!r} references an unknown node")
            if u == v:
                raise GraphError(f"self-loop on {u!r}")
            if v in marks[u]:
                raise GraphError(f"more than one edge between {u!r} and {v!r}")
            marks[u][v] = EdgeMark(mv)
            marks[v][u] = EdgeMark(mu)
        self._nodes = nodes
        self._index = index
        self._marks = marks
        self._hash = None

    @classmethod
    def _wrap(cls, nodes: Tuple[str, ...], marks: Marks) -> "MixedGraph":
        g = cls.__new__(cls)
        g._nodes = nodes
        g._index = {n: i for i, n in enumerate(nodes)}
        g._marks = marks
        g._hash = None
        return g

    @classmethod
    def empty(cls, nodes: Sequence[str]) -> "MixedGraph":
        return cls(nodes)

    @classmethod
    def from_directed(cls, nodes: Sequence[str], arcs: Iterable[Tuple[str, str]]) -> "MixedGraph":
        return cls(nodes, ((u, v, TAIL, ARROW) for u, v in arcs))

    @classmethod
    def from_undirected(cls, nodes: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> "MixedGraph":
        return cls(nodes, ((u, v, TAIL, TAIL) for u, v in pairs))

    @classmethod
    def complete(cls, nodes: Sequence[str], mark: EdgeMark = TAIL) -> "MixedGraph":
        return cls(nodes, ((u, v, mark, mark) for u, v in itertools.combinations(nodes, 2)))

    # -- basic accessors -------------------------------------------------

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    def index(self, node: str) -> int:
        return self._index[node]

    def __contains__(self, node) -> bool:
        return node in self._index

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        out = []
        for u in self._nodes:
            iu = self._index[u]
            for v, mv in self._marks[u].items():
                if self._index[v] > iu:
                    out.append(Edge(u, v, self._marks[v][u], mv))
        out.sort(key=lambda e: (self._index[e.u], self._index[e.v]))
        return tuple(out)

    @property
    def n_edges(self) -> int:
        return sum(len(m) for m in self._marks.values()) // 2

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._marks[u]

    def neighbors(self, u: str) -> Tuple[str, ...]:
        return tuple(sorted(self._marks[u], key=self._index.__getitem__))

    def mark(self, u: str, v: str) -> Optional[EdgeMark]:
        """Mark at the ``v`` end of the edge ``u``–``v`` (None if absent)."""
        return self._marks[u].get(v)

    def is_directed(self, u: str, v: str) -> bool:
        m = self._marks[u]
        return m.get(v) is ARROW and self._marks[v][u] is TAIL

    def is_undirected(self, u: str, v: str) -> bool:
        m = self._marks[u]
        return m.get(v) is TAIL and self._marks[v][u] is TAIL

    def is_bidirected(self, u: str, v: str) -> bool:
        m = self._marks[u]
        return m.get(v) is ARROW and self._marks[v][u] is ARROW

    def parents(self, v: str) -> Tuple[str, ...]:
        return tuple(u for u in self.neighbors(v) if self.is_directed(u, v))

    def children(self, u: str) -> Tuple[str, ...]:
        return tuple(v for v in self.neighbors(u) if self.is_directed(u, v))

    def undirected_neighbors(self, u: str) -> Tuple[str, ...]:
        return tuple(v for v in self.neighbors(u) if self.is_undirected(u, v))

    def directed_edges(self) -> List[Tuple[str, str]]:
        out = []
        for e in self.edges:
            if e.mark_u is TAIL and e.mark_v is ARROW:
                out.append((e.u, e.v))
            elif e.mark_u is ARROW and e.mark_v is TAIL:
                out.append((e.v, e.u))
        return out

    def undirected_edges(self) -> List[Tuple[str, str]]:
        return [(e.u, e.v) for e in self.edges if e.mark_u is TAIL and e.mark_v is TAIL]

    def marks_copy(self) -> Marks:
        """Mutable copy of the endpoint table, ``m[u][v]`` = mark at ``v``."""
        return {u: dict(m) for u, m in self._marks.items()}

    # -- derived graphs ----------------------------------------------------

    def with_edge(self, u: str, v: str, mark_u: EdgeMark, mark_v: EdgeMark) -> "MixedGraph":
        if u == v:
            raise GraphError(f"self-loop on {u!r}")
        marks = self.marks_copy()
        marks[u][v] = mark_v
        marks[v][u] = mark_u
        return MixedGraph._wrap(self._nodes, marks)

    def without_edge(self, u: str, v: str) -> "MixedGraph":
        marks = self.marks_copy()
        marks[u].pop(v, None)
        marks[v].pop(u, None)
        return MixedGraph._wrap(self._nodes, marks)

    def skeleton(self) -> "MixedGraph":
        return MixedGraph.from_undirected(self._nodes, ((e.u, e.v) for e in self.edges))

    def reindexed(self, nodes: Sequence[str]) -> "MixedGraph":
        """Same edges over a new canonical node order (must be a permutation)."""
        if sorted(nodes) != sorted(self._nodes):
            raise GraphError("reindexing requires a permutation of the node set")
        return MixedGraph(nodes, self.edges)

    # -- structural predicates ---------------------------------------------

    def has_directed_cycle(self) -> bool:
        return _find_cycle(self._nodes, {n: self.children(n) for n in self._nodes}) is not None

    def is_dag(self) -> bool:
        for e in self.edges:
            if {e.mark_u, e.mark_v} != {TAIL, ARROW}:
                return False
        return not self.has_directed_cycle()

    def is_pdag(self) -> bool:
        """Only directed and undirected edges, directed part acyclic."""
        for e in self.edges:
            if CIRCLE in (e.mark_u, e.mark_v) or (e.mark_u is ARROW and e.mark_v is ARROW):
                return False
        return not self.has_directed_cycle()

    def topological_order(self) -> Tuple[str, ...]:
        order = _topological_order(self._nodes, {n: self.children(n) for n in self._nodes})
        if order is None:
            raise CyclicGraph("graph has a directed cycle")
        return order

    def ancestors(self, node: str) -> FrozenSet[str]:
        """Nodes with a directed path into ``node`` (excluding itself)."""
        seen = set()
        stack = [node]
        while stack:
            for p in self.parents(stack.pop()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def descendants(self, node: str) -> FrozenSet[str]:
        seen = set()
        stack = [node]
        while stack:
            for c in self.children(stack.pop()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    # -- value semantics ---------------------------------------------------

    def _key(self):
        return (self._nodes, frozenset((e.u, e.v, e.mark_u, e.mark_v) for e in self.edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return set(self._nodes) == set(other._nodes) and self.edge_set() == other.edge_set()

    def edge_set(self) -> FrozenSet[Tuple[str, str, EdgeMark, EdgeMark]]:
        """Order-independent edge set, each edge stored with u < v lexically."""
        out = set()
        for e in self.edges:
            if e.u < e.v:
                out.add((e.u, e.v, e.mark_u, e.mark_v))
            else:
                out.add((e.v, e.u, e.mark_v, e.mark_u))
        return frozenset(out)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._nodes), self.edge_set()))
        return self._hash

    def __repr__(self) -> str:
        return f"MixedGraph({list(self._nodes)!r}, [{', '.join(edge_str(e) for e in self.edges)}])"

    def to_dict(self) -> dict:
        return {
            "nodes": list(self._nodes),
            "edges": [
                {"u": e.u, "v": e.v, "mark_u": e.mark_u.value, "mark_v": e.mark_v.value}
                for e in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MixedGraph":
        return cls(
            data["nodes"],
            ((e["u"], e["v"], EdgeMark(e["mark_u"]), EdgeMark(e["mark_v"])) for e in data["edges"]),
        )


_MARK_LEFT = {TAIL: "-", ARROW: "<", CIRCLE: "o"}
_MARK_RIGHT = {TAIL: "-", ARROW: ">", CIRCLE: "o"}


def edge_str(e: Edge) -> str:
    return f"{e.u} {_MARK_LEFT[e.mark_u]}-{_MARK_RIGHT[e.mark_v]} {e.v}"


def _topological_order(nodes, children) -> Optional[Tuple[str, ...]]:
    indeg = {n: 0 for n in nodes}
    for n in nodes:
        for c in children[n]:
            indeg[c] += 1
    index = {n: i for i, n in enumerate(nodes)}
    ready = sorted((n for n in nodes if indeg[n] == 0), key=index.__getitem__)
    out = []
    while ready:
        n = ready.pop(0)
        out.append(n)
        for c in children[n]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
                ready.sort(key=index.__getitem__)
    return tuple(out) if len(out) == len(nodes) else None


def _find_cycle(nodes, children) -> Optional[List[str]]:
    color = {n: 0 for n in nodes}
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(children[root]))]
        color[root] = 1
        path = [root]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == 0:
                color[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(children[nxt])))
    return None


# ---------------------------------------------------------------------------
# Background knowledge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BackgroundKnowledge:
    """Tiers plus explicitly forbidden / required directed edges.

    A variable in tier ``i`` may cause variables in tier ``i`` or later,
    never earlier ones.  Variables without a tier are unconstrained.
    """

    tiers: Mapping[str, int] = field(default_factory=dict)
    forbidden: FrozenSet[Tuple[str, str]] = frozenset()
    required: FrozenSet[Tuple[str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "tiers", dict(self.tiers))
        object.__setattr__(self, "forbidden", frozenset(tuple(p) for p in self.forbidden))
        object.__setattr__(self, "required", frozenset(tuple(p) for p in self.required))
        for t in self.tiers.values():
            if int(t) != t or t < 0:
                raise ValueError(f"tiers must be non-negative integers, got {t!r}")
        both = self.required & self.forbidden
        if both:
            raise ValueError(f"edges both required and forbidden: {sorted(both)}")
        for u, v in self.required:
            if self._tier_violation(u, v):
                raise ValueError(f"required edge {u}->{v} points into an earlier tier")

    def _tier_violation(self, u: str, v: str) -> bool:
        tu, tv = self.tiers.get(u), self.tiers.get(v)
        return tu is not None and tv is not None and tu > tv

    def forbids(self, u: str, v: str) -> bool:
        """True when the directed edge ``u -> v`` is ruled out."""
        return (u, v) in self.forbidden or self._tier_violation(u, v)

    def requires(self, u: str, v: str) -> bool:
        return (u, v) in self.required

    def __bool__(self) -> bool:
        return bool(self.tiers or self.forbidden or self.required)


NO_KNOWLEDGE = BackgroundKnowledge()


# ---------------------------------------------------------------------------
# Triples, v-structures, d-separation
# ---------------------------------------------------------------------------


def unshielded_triples(g: MixedGraph) -> List[Tuple[str, str, str]]:
    """All ``(X, C, Y)`` with X–C–Y adjacent and X, Y non-adjacent.

    Each unordered triple appears once, with ``X`` before ``Y`` in node
    order; the list is sorted by the node indices of ``(X, C, Y)``.
    """
    idx = g.index
    out = []
    for c in g.nodes:
        nbrs = g.neighbors(c)
        for x, y in itertools.combinations(nbrs, 2):
            if not g.adjacent(x, y):
                out.append((x, c, y))
    out.sort(key=lambda t: (idx(t[0]), idx(t[1]), idx(t[2])))
    return out


def v_structures(g: MixedGraph) -> FrozenSet[Tuple[str, str, str]]:
    """Unshielded colliders ``X -> C <- Y`` made of directed edges (X before Y)."""
    out = set()
    for x, c, y in unshielded_triples(g):
        if g.is_directed(x, c) and g.is_directed(y, c):
            out.add((x, c, y))
    return frozenset(out)


def d_separated(dag: MixedGraph, x: str, y: str, z: Iterable[str]) -> bool:
    """True iff ``x`` and ``y`` are d-separated by ``z`` in ``dag``.

    Reachability ("Bayes ball") over (node, direction) states.
    """
    z = frozenset(z)
    if x == y:
        raise ValueError("x and y must differ")
    if x in z or y in z:
        raise ValueError("x and y must not be in the conditioning set")
    for e in dag.edges:
        if {e.mark_u, e.mark_v} != {TAIL, ARROW}:
            raise GraphError("d-separation needs a fully directed graph")
    if dag.has_directed_cycle():
        raise CyclicGraph("d-separation needs an acyclic graph")

    # nodes that are in z or have a descendant in z
    z_anc = set(z)
    stack = list(z)
    while stack:
        for p in dag.parents(stack.pop()):
            if p not in z_anc:
                z_anc.add(p)
                stack.append(p)

    # direction "up": arrived from a child; "down": arrived from a parent
    visited = set()
    queue = deque([(x, "up")])
    while queue:
        node, direction = queue.popleft()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))
        if node == y:
            return False
        if direction == "up" and node not in z:
            for p in dag.parents(node):
                queue.append((p, "up"))
            for c in dag.children(node):
                queue.append((c, "down"))
        elif direction == "down":
            if node not in z:
                for c in dag.children(node):
                    queue.append((c, "down"))
            if node in z_anc:
                for p in dag.parents(node):
                    queue.append((p, "up"))
    return True


# ---------------------------------------------------------------------------
# Meek closure
# ---------------------------------------------------------------------------


def _is_dir(m: Marks, u: str, v: str) -> bool:
    return m[u].get(v) is ARROW and m[v][u] is TAIL


def _is_und(m: Marks, u: str, v: str) -> bool:
    return m[u].get(v) is TAIL and m[v][u] is TAIL


def _meek_proposals(nodes: Sequence[str], m: Marks, frozen) -> List[Tuple[str, str]]:
    """Orientations demanded by rules 1-3 on the current state."""
    out = []
    for a in nodes:
        for b in m[a]:
            if not _is_und(m, a, b) or frozenset((a, b)) in frozen:
                continue
            # rule 1: c -> a - b, c and b non-adjacent  =>  a -> b
            if any(_is_dir(m, c, a) and c != b and b not in m[c] for c in m[a]):
                out.append((a, b))
                continue
            # rule 2: a -> c -> b  =>  a -> b
            if any(_is_dir(m, a, c) and _is_dir(m, c, b) for c in m[a] if c in m[b]):
                out.append((a, b))
                continue
            # rule 3: a - c -> b, a - d -> b, c and d non-adjacent  =>  a -> b
            mids = [c for c in m[a] if c != b and _is_und(m, a, c) and c in m[b] and _is_dir(m, c, b)]
            if any(d not in m[c] for c, d in itertools.combinations(mids, 2)):
                out.append((a, b))
    return out


def apply_meek_rules(g: MixedGraph, frozen: Iterable[FrozenSet[str]] = ()) -> Tuple[MixedGraph, List[Tuple[str, str]]]:
    """Close a PDAG under orientation rules 1-3.

    Rules fire in synchronous sweeps.  An undirected edge demanded in both
    directions within one sweep is left undirected and reported as a
    conflict; it is never oriented afterwards.

    Returns
    -------
    (MixedGraph, list of conflicting pairs)
    """
    m = g.marks_copy()
    frozen = set(frozenset(p) for p in frozen)
    conflicts = []
    while True:
        props = _meek_proposals(g.nodes, m, frozen)
        if not props:
            break
        pairs = {}
        for u, v in props:
            pairs.setdefault(frozenset((u, v)), set()).add((u, v))
        for key, dirs in pairs.items():
            if len(dirs) > 1:
                frozen.add(key)
                conflicts.append(tuple(sorted(key, key=g.index)))
                continue
            (u, v), = dirs
            m[u][v] = ARROW
            m[v][u] = TAIL
    return MixedGraph._wrap(g.nodes, m), conflicts


# ---------------------------------------------------------------------------
# Extension, completion, enumeration
# ---------------------------------------------------------------------------


def _check_pdag_input(g: MixedGraph) -> None:
    for e in g.edges:
        if CIRCLE in (e.mark_u, e.mark_v) or (e.mark_u is ARROW and e.mark_v is ARROW):
            raise GraphError(f"expected only directed/undirected edges, got {edge_str(e)}")


def extend_pdag(pdag: MixedGraph) -> MixedGraph:
    """Orient a PDAG into a consistent DAG extension (Dor & Tarsi).

    Repeatedly removes a sink whose undirected neighbours are adjacent to
    all of its other neighbours, orienting those undirected edges into it.
    The highest-index eligible sink is removed first, so free edges end up
    pointing from the lower-index to the higher-index node.

    Raises
    ------
    NotExtendable
        If no consistent extension exists.
    """
    _check_pdag_input(pdag)
    m = pdag.marks_copy()
    out = pdag.marks_copy()
    remaining = list(pdag.nodes)
    while remaining:
        chosen = None
        for x in reversed(remaining):
            if any(_is_dir(m, x, y) for y in m[x]):
                continue
            und = [y for y in m[x] if _is_und(m, x, y)]
            adj = set(m[x])
            if all(all(a == y or a in m[y] for a in adj) for y in und):
                chosen = x
                break
        if chosen is None:
            raise NotExtendable("PDAG admits no consistent DAG extension")
        for y in list(m[chosen]):
            if _is_und(m, chosen, y):
                out[y][chosen] = ARROW
                out[chosen][y] = TAIL
            del m[y][chosen]
        m[chosen] = {}
        remaining.remove(chosen)
    return MixedGraph._wrap(pdag.nodes, out)


def complete_to_cpdag(dag: MixedGraph) -> MixedGraph:
    """CPDAG of the Markov equivalence class containing ``dag``.

    Keeps v-structure arrows, undirects everything else and closes the
    result under rules 1-3.
    """
    if not dag.is_dag():
        if dag.has_directed_cycle():
            raise CyclicGraph("input has a directed cycle")
        raise GraphError("complete_to_cpdag expects a DAG")
    keep = set()
    for x, c, y in v_structures(dag):
        keep.add((x, c))
        keep.add((y, c))
    edges = []
    for u, v in dag.directed_edges():
        if (u, v) in keep:
            edges.append((u, v, TAIL, ARROW))
        else:
            edges.append((u, v, TAIL, TAIL))
    pattern = MixedGraph(dag.nodes, edges)
    cpdag, _ = apply_meek_rules(pattern)
    return cpdag


def enumerate_consistent_extensions(pdag: MixedGraph, limit: Optional[int] = DEFAULT_EXTENSION_CAP) -> List[MixedGraph]:
    """All DAGs that orient every undirected edge of ``pdag`` consistently.

    A consistent extension keeps every directed edge, stays acyclic and
    creates no unshielded collider that ``pdag`` does not already have.
    Undirected edges are assigned in canonical order, lower-to-higher node
    first, so the output order is deterministic.

    Parameters
    ----------
    limit : int or None
        Maximum class size; None means unbounded.

    Raises
    ------
    LimitExceeded
        When more than ``limit`` extensions exist.
    """
    if limit is not None and limit <= 0:
        raise ValueError("limit must be positive")
    _check_pdag_input(pdag)
    if pdag.has_directed_cycle():
        return []
    nodes = pdag.nodes
    undirected = pdag.undirected_edges()
    m = pdag.marks_copy()
    for u, v in undirected:
        # unassigned edges are removed from the working table
        del m[u][v]
        del m[v][u]
    adj = {n: set(pdag.neighbors(n)) for n in nodes}
    parents = {n: set(pdag.parents(n)) for n in nodes}
    children = {n: set(pdag.children(n)) for n in nodes}
    results: List[MixedGraph] = []

    def reaches(src, dst):
        stack, seen = [src], {src}
        while stack:
            n = stack.pop()
            if n == dst:
                return True
            for c in children[n]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return False

    def ok(p, q):
        # new collider at q, or a cycle through p -> q
        for r in parents[q]:
            if r != p and r not in adj[p]:
                return False
        return not reaches(q, p)

    def rec(k):
        if k == len(undirected):
            if limit is not None and len(results) >= limit:
                raise LimitExceeded(limit, len(results) + 1)
            full = {u: dict(mm) for u, mm in m.items()}
            results.append(MixedGraph._wrap(nodes, full))
            return
        u, v = undirected[k]
        for p, q in ((u, v), (v, u)):
            if ok(p, q):
                parents[q].add(p)
                children[p].add(q)
                m[p][q] = ARROW
                m[q][p] = TAIL
                rec(k + 1)
                del m[p][q]
                del m[q][p]
                parents[q].discard(p)
                children[p].discard(q)

    rec(0)
    return results


def pag_to_pdag(pag: MixedGraph) -> Tuple[MixedGraph, List[Tuple[str, str]]]:
    """Read circle marks as "undetermined" to obtain a PDAG.

    ``o-o`` becomes undirected; ``o->`` and ``->`` become directed; a tail
    facing a circle points towards the circle.  Bidirected edges have no
    DAG reading and are dropped; they are returned separately.
    """
    edges = []
    bidirected = []
    for e in pag.edges:
        mu, mv = e.mark_u, e.mark_v
        if mu is ARROW and mv is ARROW:
            bidirected.append((e.u, e.v))
        elif mv is ARROW or (mu is TAIL and mv is CIRCLE):
            edges.append((e.u, e.v, TAIL, ARROW))
        elif mu is ARROW or (mu is CIRCLE and mv is TAIL):
            edges.append((e.u, e.v, ARROW, TAIL))
        else:
            edges.append((e.u, e.v, TAIL, TAIL))
    return MixedGraph(pag.nodes, edges), bidirected


def all_directed_paths(dag: MixedGraph, src: str, dst: str, max_paths: int = 100000) -> List[Tuple[str, ...]]:
    """Every directed path from ``src`` to ``dst`` in deterministic order."""
    out: List[Tuple[str, ...]] = []

    def rec(path):
        node = path[-1]
        if node == dst:
            out.append(tuple(path))
            if len(out) > max_paths:
                raise GraphError(f"more than {max_paths} directed paths")
            return
        for c in dag.children(node):
            if c not in path:
                path.append(c)
                rec(path)
                path.pop()

    rec([src])
    return out


def iter_simple_paths(g: MixedGraph, src: str, dst: str) -> Iterator[Tuple[str, ...]]:
    """Simple paths between two nodes in the skeleton of ``g``."""
    path = [src]
    onpath = {src}

    def rec():
        node = path[-1]
        if node == dst:
            yield tuple(path)
            return
        for n in g.neighbors(node):
            if n not in onpath:
                path.append(n)
                onpath.add(n)
                yield from rec()
                onpath.discard(n)
                path.pop()

    yield from rec()
