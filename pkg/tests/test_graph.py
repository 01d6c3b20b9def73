import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import brute_extensions, d_separated_by_paths
from causalfair.errors import CyclicGraph, GraphError, LimitExceeded, NotExtendable
from causalfair.graph import (
    ARROW,
    CIRCLE,
    TAIL,
    BackgroundKnowledge,
    MixedGraph,
    apply_meek_rules,
    complete_to_cpdag,
    d_separated,
    enumerate_consistent_extensions,
    extend_pdag,
    pag_to_pdag,
    unshielded_triples,
    v_structures,
)
from causalfair.simulate import random_dag


def dag(nodes, arcs):
    return MixedGraph.from_directed(nodes, arcs)


@st.composite
def dags(draw, min_nodes=2, max_nodes=7):
    n = draw(st.integers(min_nodes, max_nodes))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.sampled_from([0.2, 0.4, 0.6]))
    return random_dag(n, p, np.random.default_rng(seed))


# -- MixedGraph --------------------------------------------------------------

def test_rejects_self_loops_and_parallel_edges():
    with pytest.raises(GraphError):
        MixedGraph("XY", [("X", "X", TAIL, ARROW)])
    with pytest.raises(GraphError):
        MixedGraph("XY", [("X", "Y", TAIL, ARROW), ("Y", "X", TAIL, ARROW)])


def test_marks_are_read_at_the_far_end():
    g = MixedGraph("XY", [("X", "Y", CIRCLE, ARROW)])
    assert g.mark("X", "Y") is ARROW
    assert g.mark("Y", "X") is CIRCLE
    assert not g.is_directed("X", "Y")


def test_equality_ignores_edge_insertion_order():
    a = MixedGraph("XYZ", [("X", "Y", TAIL, ARROW), ("Z", "Y", TAIL, ARROW)])
    b = MixedGraph("XYZ", [("Y", "Z", ARROW, TAIL), ("Y", "X", ARROW, TAIL)])
    assert a == b and hash(a) == hash(b)


def test_dict_round_trip():
    g = MixedGraph("XYZ", [("X", "Y", CIRCLE, ARROW), ("Y", "Z", TAIL, TAIL)])
    assert MixedGraph.from_dict(g.to_dict()) == g


def test_topological_order_rejects_cycles():
    with pytest.raises(CyclicGraph):
        dag("XYZ", [("X", "Y"), ("Y", "Z"), ("Z", "X")]).topological_order()


# -- background knowledge ----------------------------------------------------

def test_background_knowledge_validation():
    with pytest.raises(ValueError):
        BackgroundKnowledge(forbidden={("X", "Y")}, required={("X", "Y")})
    with pytest.raises(ValueError):
        BackgroundKnowledge(tiers={"X": 1, "Y": 0}, required={("X", "Y")})
    bk = BackgroundKnowledge(tiers={"X": 1, "Y": 0})
    assert bk.forbids("X", "Y") and not bk.forbids("Y", "X")


# -- unshielded triples --------------------------------------------------------

def test_unshielded_triples_examples():
    assert unshielded_triples(MixedGraph.from_undirected("XCY", [("X", "C"), ("C", "Y")])) == [("X", "C", "Y")]
    tri = MixedGraph.from_undirected("XCY", [("X", "C"), ("C", "Y"), ("X", "Y")])
    assert unshielded_triples(tri) == []
    path = MixedGraph.from_undirected("WXCY", [("W", "X"), ("X", "C"), ("C", "Y")])
    assert sorted(unshielded_triples(path)) == [("W", "X", "C"), ("X", "C", "Y")]


@given(dags())
def test_unshielded_triples_are_canonical_and_complete(g):
    got = unshielded_triples(g)
    assert len(got) == len(set(got))
    want = set()
    for c in g.nodes:
        for x, y in itertools.combinations(g.neighbors(c), 2):
            if not g.adjacent(x, y):
                want.add((x, c, y))
    assert set(got) == want


# -- d-separation --------------------------------------------------------------

def test_d_separation_examples():
    chain = dag("XCY", [("X", "C"), ("C", "Y")])
    assert d_separated(chain, "X", "Y", {"C"})
    coll = dag("XCY", [("X", "C"), ("Y", "C")])
    assert d_separated(coll, "X", "Y", set())
    assert not d_separated(coll, "X", "Y", {"C"})
    med = dag("XMY", [("X", "M"), ("M", "Y"), ("X", "Y")])
    assert not d_separated(med, "X", "Y", {"M"})


def test_d_separation_descendant_of_collider_opens_path():
    g = dag("XCYD", [("X", "C"), ("Y", "C"), ("C", "D")])
    assert not d_separated(g, "X", "Y", {"D"})


def test_d_separation_rejects_bad_input():
    with pytest.raises(CyclicGraph):
        d_separated(dag("XYZ", [("X", "Y"), ("Y", "Z"), ("Z", "X")]), "X", "Y", ())
    with pytest.raises(ValueError):
        d_separated(dag("XY", []), "X", "X", ())


@settings(max_examples=60, deadline=None)
@given(dags(max_nodes=6), st.data())
def test_d_separation_matches_path_enumeration(g, data):
    x, y = data.draw(st.lists(st.sampled_from(g.nodes), min_size=2, max_size=2, unique=True))
    rest = [v for v in g.nodes if v not in (x, y)]
    z = data.draw(st.sets(st.sampled_from(rest))) if rest else set()
    assert d_separated(g, x, y, z) == d_separated_by_paths(g.nodes, g.directed_edges(), x, y, z)


@given(dags(max_nodes=6), st.data())
def test_d_separation_is_symmetric(g, data):
    x, y = data.draw(st.lists(st.sampled_from(g.nodes), min_size=2, max_size=2, unique=True))
    z = {v for v in g.nodes if v not in (x, y) and data.draw(st.booleans())}
    assert d_separated(g, x, y, z) == d_separated(g, y, x, z)


# -- extension, completion, enumeration ---------------------------------------------

def test_extend_pdag_examples():
    g = dag("XYZ", [("X", "Y"), ("Y", "Z")])
    assert extend_pdag(g) == g
    assert extend_pdag(MixedGraph.from_undirected("XY", [("X", "Y")])) == dag("XY", [("X", "Y")])
    # D -> C would add the collider D -> C <- X
    p = MixedGraph("XYCD", [("X", "C", TAIL, ARROW), ("Y", "C", TAIL, ARROW), ("C", "D", TAIL, TAIL)])
    assert extend_pdag(p).is_directed("C", "D")


def test_extend_pdag_not_extendable():
    # X - Y - Z - W - X cycle of undirected edges with no chords: every orientation adds a collider
    square = MixedGraph.from_undirected("XYZW", [("X", "Y"), ("Y", "Z"), ("Z", "W"), ("W", "X")])
    with pytest.raises(NotExtendable):
        extend_pdag(square)


def test_complete_to_cpdag_examples():
    coll = dag("XCY", [("X", "C"), ("Y", "C")])
    assert complete_to_cpdag(coll) == coll
    chain = complete_to_cpdag(dag("XYZ", [("X", "Y"), ("Y", "Z")]))
    assert chain == MixedGraph.from_undirected("XYZ", [("X", "Y"), ("Y", "Z")])
    r1 = complete_to_cpdag(dag("XCYD", [("X", "C"), ("Y", "C"), ("C", "D")]))
    assert r1.is_directed("C", "D")


def test_complete_to_cpdag_rejects_non_dags():
    with pytest.raises(GraphError):
        complete_to_cpdag(MixedGraph.from_undirected("XY", [("X", "Y")]))


def test_enumerate_examples():
    d = dag("XYZ", [("X", "Y"), ("Y", "Z")])
    assert enumerate_consistent_extensions(complete_to_cpdag(dag("XCY", [("X", "C"), ("Y", "C")]))) == \
        [dag("XCY", [("X", "C"), ("Y", "C")])]
    pair = enumerate_consistent_extensions(MixedGraph.from_undirected("XY", [("X", "Y")]))
    assert set(pair) == {dag("XY", [("X", "Y")]), dag("XY", [("Y", "X")])}
    three = enumerate_consistent_extensions(complete_to_cpdag(d))
    assert len(three) == 3
    assert dag("XYZ", [("X", "Y"), ("Z", "Y")]) not in three


def test_enumerate_limit():
    star = MixedGraph.from_undirected("ABCDE", [("A", v) for v in "BCDE"])
    assert len(enumerate_consistent_extensions(star, limit=None)) == 5
    with pytest.raises(LimitExceeded) as exc:
        enumerate_consistent_extensions(star, limit=3)
    assert exc.value.limit == 3


@settings(max_examples=40, deadline=None)
@given(dags(max_nodes=7))
def test_class_closure(g):
    cp = complete_to_cpdag(g)
    members = enumerate_consistent_extensions(cp, limit=None)
    assert g in members
    for m in members:
        assert m.is_dag()
        assert complete_to_cpdag(m) == cp
    assert extend_pdag(cp) in members


@settings(max_examples=40, deadline=None)
@given(dags(max_nodes=6))
def test_enumeration_matches_brute_force(g):
    cp = complete_to_cpdag(g)
    if len(cp.undirected_edges()) > 8:
        return
    got = {frozenset(m.directed_edges()) for m in enumerate_consistent_extensions(cp, limit=None)}
    assert got == brute_extensions(cp)


@given(dags())
def test_cpdag_keeps_v_structures_and_skeleton(g):
    cp = complete_to_cpdag(g)
    assert cp.skeleton() == g.skeleton()
    assert v_structures(cp) == v_structures(g)
    assert cp.is_pdag()


def test_meek_rules_orient_chain_and_report_conflicts():
    p = MixedGraph("XYZ", [("X", "Y", TAIL, ARROW), ("Y", "Z", TAIL, TAIL)])
    out, conflicts = apply_meek_rules(p)
    assert out.is_directed("Y", "Z") and not conflicts
    # opposite R1 proposals on the same undirected edge freeze it
    q = MixedGraph("ABCD", [("A", "B", TAIL, ARROW), ("B", "C", TAIL, TAIL), ("D", "C", TAIL, ARROW)])
    out, conflicts = apply_meek_rules(q)
    assert out.is_undirected("B", "C") and conflicts


def test_pag_to_pdag_drops_bidirected_edges():
    pag = MixedGraph("XYZ", [("X", "Y", ARROW, ARROW), ("Y", "Z", CIRCLE, CIRCLE)])
    pdag, bidir = pag_to_pdag(pag)
    assert bidir == [("X", "Y")]
    assert not pdag.adjacent("X", "Y") and pdag.is_undirected("Y", "Z")
