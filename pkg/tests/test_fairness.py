import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scm_oracle import oracle_from_scm, random_fairness_scm

from causalfair.data import Dataset
from causalfair.errors import MissingVariable
from causalfair.fairness import (
    ATE_IPW,
    DE,
    ED,
    ID,
    MEASURES,
    TE,
    TV,
    FairnessQuery,
    ate_ipw,
    classify_roles,
    indirect_and_explained,
    measure_range,
    measures_for_dag,
    natural_direct_effect,
    path_specific_effect,
    total_effect,
    total_variation,
)
from causalfair.graph import ARROW, CIRCLE, MixedGraph, all_directed_paths, complete_to_cpdag
from causalfair.simulate import BinaryScm, flip_scm, random_binary_scm

Q = FairnessQuery("A", "Y", privileged="1", protected="0", positive="1")


def dag(nodes, arcs):
    return MixedGraph.from_directed(nodes, arcs)


def scm_from_spec(nodes, parents, cpt):
    g = dag(nodes, [(p, v) for v in nodes for p in parents[v]])
    assert all(g.parents(v) == parents[v] for v in nodes)
    return BinaryScm(g, cpt)


def binary(a, y):
    return Dataset.categorical(np.column_stack([a, y]), ["A", "Y"], levels={"A": ("0", "1"), "Y": ("0", "1")})


# -- roles -------------------------------------------------------------------------

def test_roles_examples():
    assert classify_roles(dag("AMY", [("A", "M"), ("M", "Y")]), "A", "Y").mediators == {"M"}
    r = classify_roles(dag("CAY", [("C", "A"), ("C", "Y"), ("A", "Y")]), "A", "Y")
    assert r.confounders == {"C"} and not r.mediators
    assert classify_roles(dag("AKY", [("A", "K"), ("Y", "K")]), "A", "Y").colliders == {"K"}
    with pytest.raises(MissingVariable):
        classify_roles(dag("AY", []), "A", "Z")


def test_roles_mediator_kinds_and_disjointness():
    g = dag("CAMPY", [("C", "A"), ("C", "Y"), ("A", "M"), ("M", "Y"), ("A", "P"), ("P", "Y")])
    r = classify_roles(g, "A", "Y", {"P": "explaining"})
    assert r.mediator_kind == {"M": "redlining", "P": "explaining"}
    assert not (r.confounders & r.mediators or r.confounders & r.colliders or r.mediators & r.colliders)


# -- total variation and total effect ---------------------------------------------

def test_total_variation_examples():
    a = [1] * 10 + [0] * 10
    assert total_variation(binary(a, [1] * 4 + [0] * 6 + [1] * 6 + [0] * 4), Q) == pytest.approx(-0.2)
    assert total_variation(binary(a, [1, 0] * 10), Q) == pytest.approx(0.0)
    assert total_variation(binary(a, a), Q) == 1.0


def test_total_effect_without_confounders_is_tv():
    d = binary([1, 1, 1, 0, 0, 0, 0], [1, 1, 0, 0, 1, 0, 0])
    g = dag("AY", [("A", "Y")])
    assert total_effect(d, g, Q).value == pytest.approx(total_variation(d, Q), abs=1e-12)
    same = FairnessQuery("A", "Y", "1", "1", "1")
    assert total_variation(d, same) == 0.0


def test_total_effect_matches_intervention():
    g = dag("CAY", [("C", "A"), ("C", "Y"), ("A", "Y")])
    cpt = {"C": {(): 0.3}, "A": {(0,): 0.2, (1,): 0.9}, "Y": {(0, 0): 0.1, (0, 1): 0.4, (1, 0): 0.5, (1, 1): 0.6}}
    scm = BinaryScm(g, cpt)
    d = scm.exact_dataset()
    # do(A = a): P(y) = sum_c P(c) P(y | c, a)
    want = 0.7 * (0.4 - 0.1) + 0.3 * (0.6 - 0.5)
    assert total_effect(d, g, Q).value == pytest.approx(want, abs=1e-12)
    assert oracle_from_scm(scm).te("A", "Y") == pytest.approx(want, abs=1e-12)
    assert total_variation(d, Q) != pytest.approx(want, abs=1e-3)


# -- direct and path-specific effects --------------------------------------------

def test_direct_effect_zero_without_edge_and_te_without_mediators():
    scm = random_binary_scm(dag("AMY", [("A", "M"), ("M", "Y")]), 0)
    d = scm.exact_dataset()
    assert natural_direct_effect(d, scm.dag, Q).value == 0.0
    g = dag("AY", [("A", "Y")])
    d2 = random_binary_scm(g, 1).exact_dataset()
    assert natural_direct_effect(d2, g, Q).value == total_effect(d2, g, Q).value


def test_direct_effect_matches_nested_counterfactual():
    g = dag("CAMY", [("C", "A"), ("C", "Y"), ("A", "M"), ("M", "Y"), ("A", "Y"), ("C", "M")])
    scm = random_binary_scm(g, 7)
    assert natural_direct_effect(scm.exact_dataset(), g, Q).value == pytest.approx(
        oracle_from_scm(scm).de("A", "Y"), abs=1e-9)


def test_path_specific_degenerate_partitions():
    g = dag("AMY", [("A", "M"), ("M", "Y"), ("A", "Y")])
    d = random_binary_scm(g, 2).exact_dataset()
    paths = all_directed_paths(g, "A", "Y")
    assert path_specific_effect(d, g, Q, paths).value == total_effect(d, g, Q).value
    assert path_specific_effect(d, g, Q, []).value == 0.0


def test_path_specific_two_mediators():
    g = dag("AMNY", [("A", "M"), ("A", "N"), ("M", "Y"), ("N", "Y")])
    scm = random_binary_scm(g, 3)
    got = path_specific_effect(scm.exact_dataset(), g, Q, [("A", "M", "Y")])
    assert got.value == pytest.approx(oracle_from_scm(scm).pse("A", "Y", [("A", "M", "Y")]), abs=1e-9)


def test_recanting_witness_is_not_identifiable():
    g = dag("AMWY", [("A", "M"), ("M", "Y"), ("M", "W"), ("W", "Y")])
    d = random_binary_scm(g, 4).exact_dataset()
    mv = path_specific_effect(d, g, Q, [("A", "M", "Y")])
    assert not mv.identifiable and mv.value is None and "recanting_witness" in mv.flags


def test_indirect_explained_partition():
    g = dag("AMPY", [("A", "M"), ("A", "P"), ("M", "Y"), ("P", "Y"), ("A", "Y")])
    scm = random_binary_scm(g, 5)
    o = oracle_from_scm(scm)
    d = scm.exact_dataset(mediator_kinds={"P": "explaining"})
    roles = classify_roles(g, "A", "Y", d.mediator_kinds)
    i, e = indirect_and_explained(d, g, Q, roles)
    assert i.value == pytest.approx(o.pse("A", "Y", [("A", "M", "Y")]), abs=1e-9)
    assert e.value == pytest.approx(o.pse("A", "Y", [("A", "P", "Y")]), abs=1e-9)
    # everything explaining: ID vanishes; nothing explaining: ED vanishes
    all_exp = classify_roles(g, "A", "Y", {"M": "explaining", "P": "explaining"})
    assert indirect_and_explained(d, g, Q, all_exp)[0].value == 0.0
    none = classify_roles(g, "A", "Y")
    i, e = indirect_and_explained(d, g, Q, none)
    assert e.value == 0.0
    assert i.value == pytest.approx(o.pse("A", "Y", [("A", "M", "Y"), ("A", "P", "Y")]), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_measures_match_counterfactual_oracle(seed):
    rng = np.random.default_rng(seed)
    nodes, parents, cpt, o, a, y = random_fairness_scm(rng)
    scm = scm_from_spec(nodes, parents, cpt)
    d = scm.exact_dataset()
    q = FairnessQuery(a, y, "1", "0", "1")
    roles, vals = measures_for_dag(d, scm.dag, q)
    got = {m.measure: m for m in vals}
    assert got[TV].value == pytest.approx(o.tv(a, y), abs=1e-9)
    assert got[TE].value == pytest.approx(o.te(a, y), abs=1e-9)
    assert got[DE].value == pytest.approx(o.de(a, y), abs=1e-9)
    indirect = [p for p in o.paths(a, y) if len(p) > 2]
    if got[ID].identifiable:
        assert got[ID].value == pytest.approx(o.pse(a, y, indirect), abs=1e-9)
    if not roles.confounders:
        assert got[TE].value == pytest.approx(got[TV].value, abs=1e-12)
    for m in vals:
        assert m.value is None or -1 <= m.value <= 1


# -- inverse propensity weighting -------------------------------------------------

def test_ipw_without_covariates_is_tv():
    d = random_binary_scm(dag("AY", [("A", "Y")]), 0).sample(3000, 0)
    assert ate_ipw(d, Q).value == pytest.approx(total_variation(d, Q), abs=1e-9)
    assert ate_ipw(d, Q).measure == ATE_IPW


def test_ipw_randomized_treatment_close_to_tv():
    g = dag("CAY", [("C", "Y"), ("A", "Y")])
    d = random_binary_scm(g, 1).sample(10000, 1)
    assert abs(ate_ipw(d, Q, ["C"]).value - total_variation(d, Q)) < 0.03


def test_ipw_corrects_confounding():
    g = dag("CAY", [("C", "A"), ("C", "Y"), ("A", "Y")])
    cpt = {"C": {(): 0.5}, "A": {(0,): 0.15, (1,): 0.85}, "Y": {(0, 0): 0.1, (0, 1): 0.3, (1, 0): 0.6, (1, 1): 0.8}}
    scm = BinaryScm(g, cpt)
    truth = oracle_from_scm(scm).te("A", "Y")
    d = scm.sample(20000, 11)
    ipw = ate_ipw(d, Q, ["C"]).value
    assert abs(ipw - truth) < abs(total_variation(d, Q) - truth)


def test_ipw_continuous_covariate():
    rng = np.random.default_rng(0)
    x = rng.normal(size=5000)
    a = (rng.random(5000) < 1 / (1 + np.exp(-x))).astype(int)
    y = (rng.random(5000) < 0.3 + 0.2 * a).astype(int)
    d = Dataset.from_columns({"X": x, "A": a.astype(str), "Y": y.astype(str)})
    assert abs(ate_ipw(d, Q, ["X"]).value - 0.2) < 0.05


# -- ranges over equivalence classes ----------------------------------------------

def test_directed_input_gives_points():
    scm = random_binary_scm(dag("CAY", [("C", "A"), ("C", "Y"), ("A", "Y")]), 3)
    rep = measure_range(scm.dag, scm.exact_dataset(), Q)
    assert len(rep.dags) == 1
    for m in MEASURES:
        lo, hi = rep.range(m)
        assert lo == hi


def test_flip_class_spans_signs():
    scm = flip_scm()
    d = scm.exact_dataset()
    cpdag = complete_to_cpdag(scm.dag)
    assert cpdag.is_undirected("X", "A") and len(cpdag.undirected_edges()) == 1
    rep = measure_range(cpdag, d, Q)
    assert len(rep.dags) == 2
    lo, hi = rep.range(ID)
    assert lo < 0 < hi and rep.sign(ID) == "mixed"
    # each endpoint is the value on a concrete member, computed independently
    per_dag = sorted(dict((m.measure, m.value) for m in measures_for_dag(d, g, Q)[1])[TE] for g in rep.dags)
    assert rep.range(TE) == pytest.approx(tuple(per_dag), abs=1e-12)
    assert per_dag[0] != pytest.approx(per_dag[1])
    for m in MEASURES:
        r, arg = rep.range(m), rep.argrange(m)
        if r is not None:
            assert rep.values[m][arg[0]].value == r[0] and rep.values[m][arg[1]].value == r[1]


def test_bidirected_edges_are_flagged():
    scm = random_binary_scm(dag("CAY", [("C", "A"), ("A", "Y")]), 2)
    pag = MixedGraph("CAY", [("C", "A", CIRCLE, ARROW), ("A", "Y", ARROW, ARROW)])
    rep = measure_range(pag, scm.exact_dataset(), Q)
    assert any("latent confounding" in f for f in rep.flags)


def test_report_serializes():
    scm = flip_scm()
    rep = measure_range(complete_to_cpdag(scm.dag), scm.exact_dataset(), Q).to_dict()
    assert rep["n_dags"] == 2
    assert set(rep["measures"]) == set(MEASURES)
    assert rep["measures"][ED]["sign"] == "fair"
