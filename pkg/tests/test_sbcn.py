import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalfair.data import Dataset
from causalfair.errors import NotApplicable
from causalfair.graph import MixedGraph
from causalfair.sbcn import (
    BernoulliNode,
    SbcnGraph,
    SuppesResult,
    WalkConfig,
    audit_edges,
    learn_sbcn,
    random_walk_score,
    sbcn_as_causal_graph,
    sbcn_bic,
    sbcn_hill_climb,
    suppes_filter,
    transition_matrix,
)
from causalfair.simulate import random_binary_scm, random_dag


def node(name):
    return BernoulliNode(name, "1")


def hand_graph(edges):
    names = sorted({a for a, _ in edges} | {b for _, b in edges})
    return SbcnGraph([node(n) for n in names], {(node(a), node(b)): w for (a, b), w in edges.items()})


def two_by_two(n_a1, y_a1, n_a0, y_a0, tiers=None):
    a = [1] * n_a1 + [0] * n_a0
    y = [1] * y_a1 + [0] * (n_a1 - y_a1) + [1] * y_a0 + [0] * (n_a0 - y_a0)
    return Dataset.categorical(np.column_stack([a, y]), ["A", "Y"], levels={"A": ("0", "1"), "Y": ("0", "1")},
                               tiers=tiers or {})


# -- filter ----------------------------------------------------------------------

def test_filter_raising_weight():
    d = two_by_two(10, 8, 10, 3, {"A": 0, "Y": 1})
    res = suppes_filter(d)
    edge = (BernoulliNode("A", "1"), BernoulliNode("Y", "1"))
    assert res.candidates[edge] == pytest.approx(0.5, abs=1e-12)
    # temporal priority: Y sits after A, so nothing points back into A
    assert all(a.variable == "A" for a, _ in res.candidates)


def test_filter_no_raising_no_edge():
    d = two_by_two(10, 5, 10, 5)
    assert suppes_filter(d).candidates == {}


def test_filter_skips_same_variable_and_constant_columns():
    d = Dataset.from_columns({"A": ["x", "y", "z", "x"] * 5, "C": ["k"] * 20})
    res = suppes_filter(d)
    assert all(a.variable != y.variable for a, y in res.candidates)
    assert res.undefined == [BernoulliNode("C", "k")]


def test_filter_needs_categorical():
    with pytest.raises(NotApplicable):
        suppes_filter(Dataset.continuous(np.zeros((5, 1)), ["x"]))


# -- hill climbing ---------------------------------------------------------------

def test_empty_candidates_give_empty_graph():
    d = two_by_two(10, 8, 10, 3)
    g = sbcn_hill_climb(d, SuppesResult({}, []))
    assert g.weights == {}


def test_strong_dependency_is_kept():
    d = two_by_two(500, 400, 500, 150, {"A": 0, "Y": 1})
    g = learn_sbcn(d)
    assert g.weights
    assert audit_edges(d, g) == []
    empty = SbcnGraph(g.nodes, {})
    assert g.score > sbcn_bic(d, empty)
    edge = (BernoulliNode("A", "1"), BernoulliNode("Y", "1"))
    if edge in g.weights:
        assert g.weights[edge] == pytest.approx(0.8 - 0.3)


def test_independent_columns_rarely_linked():
    clean = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        d = Dataset.categorical(rng.integers(0, 2, (10000, 3)), ["A", "B", "C"])
        clean += not learn_sbcn(d, rng_seed=seed).weights
    assert clean >= 19


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_learned_graph_invariants(seed):
    rng = np.random.default_rng(seed)
    g = random_dag(4, 0.5, rng)
    d = random_binary_scm(g, rng).sample(800, rng)
    s = learn_sbcn(d, rng_seed=seed)
    assert audit_edges(d, s) == []
    assert all(0 < w <= 1 for w in s.weights.values())
    assert all(a.variable != y.variable for a, y in s.weights)
    assert all(b > a for a, b in zip(s.trajectory, s.trajectory[1:]))
    assert s.score == pytest.approx(sbcn_bic(d, s))
    assert s.score >= sbcn_bic(d, SbcnGraph(s.nodes, {}))
    again = learn_sbcn(d, rng_seed=seed)
    assert again.weights == s.weights and again.trajectory == s.trajectory
    _, p = transition_matrix(s)
    rows = p.sum(axis=1)
    assert np.all((np.abs(rows - 1) < 1e-12) | (rows == 0))


# -- random walks ----------------------------------------------------------------

def cfg(n=100000, seed=0):
    return WalkConfig(delta_plus=node("P"), delta_minus=node("N"), n_walks=n, rng_seed=seed)


def test_walk_single_edge():
    g = SbcnGraph([node("V"), node("N"), node("P")], {(node("V"), node("N")): 0.4})
    r = random_walk_score(g, node("V"), cfg(1000))
    assert r.ds_minus == 1.0


def test_walk_two_branches():
    g = hand_graph({("V", "N"): 0.3, ("V", "P"): 0.1})
    r = random_walk_score(g, node("V"), cfg())
    assert abs(r.ds_minus - 0.75) < 0.02


def test_walk_intermediate_node():
    # V -> M (0.4), V -> P (0.2); M -> N (0.3), M -> P (0.6)
    # h_V = 2/3 h_M, h_M = 1/3  =>  h_V = 2/9
    g = hand_graph({("V", "M"): 0.4, ("V", "P"): 0.2, ("M", "N"): 0.3, ("M", "P"): 0.6})
    r = random_walk_score(g, node("V"), cfg())
    assert abs(r.ds_minus - 2 / 9) < 0.02


def test_walk_sink_restart():
    # V -> M (0.4), V -> P (0.2); M -> N (0.3), M -> S (0.3) with S a sink
    # h_V = 2/3 h_M, h_M = 1/2 + 1/2 h_V  =>  h_V = 1/2
    g = hand_graph({("V", "M"): 0.4, ("V", "P"): 0.2, ("M", "N"): 0.3, ("M", "S"): 0.3})
    r = random_walk_score(g, node("V"), cfg())
    assert abs(r.ds_minus - 0.5) < 0.02
    assert r.minus + r.plus + r.unresolved_count == r.n_walks


def test_walk_unreachable_and_bookkeeping():
    g = hand_graph({("V", "M"): 0.4, ("N", "P"): 0.2})
    r = random_walk_score(g, node("V"), cfg(100))
    assert r.flag == "unreachable" and r.ds_minus == 0.0 and r.unresolved == 1.0


def test_walk_restart_cap_counts_unresolved():
    # the only way out passes through a sink most of the time
    g = hand_graph({("V", "S"): 1.0, ("V", "N"): 0.001, ("V", "P"): 0.001})
    c = WalkConfig(delta_plus=node("P"), delta_minus=node("N"), n_walks=2000, max_restarts=2)
    r = random_walk_score(g, node("V"), c)
    assert r.unresolved_count > 0
    assert r.ds_minus + r.ds_plus + r.unresolved == 1.0


def test_walk_is_reproducible():
    g = hand_graph({("V", "N"): 0.3, ("V", "P"): 0.1})
    assert random_walk_score(g, node("V"), cfg(5000, 7)) == random_walk_score(g, node("V"), cfg(5000, 7))


def test_walk_config_validation():
    with pytest.raises(ValueError):
        WalkConfig(delta_plus=node("P"), delta_minus=node("P"))
    with pytest.raises(ValueError):
        WalkConfig(delta_plus=node("P"), delta_minus=node("N"), n_walks=0)


# -- collapse to variables -------------------------------------------------------

def test_collapse_single_edge():
    f, default = BernoulliNode("sex", "f"), BernoulliNode("default", "1")
    g = SbcnGraph([f, default], {(f, default): 0.2})
    assert sbcn_as_causal_graph(g) == MixedGraph.from_directed(["sex", "default"], [("sex", "default")])


def test_collapse_no_cross_edges():
    a, b = BernoulliNode("A", "0"), BernoulliNode("B", "0")
    assert sbcn_as_causal_graph(SbcnGraph([a, b], {})).n_edges == 0


def test_collapse_majority_direction():
    a0, a1, b0, b1 = (BernoulliNode(v, k) for v in "AB" for k in "01")
    g = SbcnGraph([a0, a1, b0, b1], {(a1, b1): 0.1, (b0, a0): 0.4})
    warnings = []
    out = sbcn_as_causal_graph(g, warnings=warnings)
    assert out.is_directed("B", "A")
    assert len(warnings) == 1
