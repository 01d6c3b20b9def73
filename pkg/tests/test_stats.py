import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalfair.data import Dataset
from causalfair.errors import InsufficientSamples, MixedFamily, SingularCovariance, ZeroVariance
from causalfair.graph import ARROW, TAIL, MixedGraph, d_separated
from causalfair.simulate import random_binary_scm, random_dag
from causalfair.stats import (
    BicScorer,
    TestConfig,
    fisher_z_test,
    g_squared_test,
    local_bic,
    make_ci_test,
    mutual_information,
    ols_fit,
    oracle_ci_test,
    pairwise_residual,
)


def cont(**cols):
    return Dataset.continuous(np.column_stack(list(cols.values())), list(cols))


def cat(**cols):
    return Dataset.categorical(np.column_stack(list(cols.values())), list(cols))


def test_config_defaults():
    assert TestConfig().alpha == 0.01
    assert TestConfig("g_squared").alpha == 0.05
    with pytest.raises(ValueError):
        TestConfig(alpha=1.5)
    with pytest.raises(ValueError):
        TestConfig("oracle")


# -- Fisher z ------------------------------------------------------------------

def test_fisher_z_copy_is_dependent():
    x = np.random.default_rng(0).normal(size=500)
    r = fisher_z_test(cont(x=x, y=x.copy()), "x", "y")
    assert not r.independent and r.p_value == 0.0


def within_binomial(rejections, trials, alpha):
    sd = np.sqrt(alpha * (1 - alpha) / trials)
    return abs(rejections / trials - alpha) <= 3 * sd


def test_fisher_z_calibration():
    # independent normals, n = 10000: the rejection rate is alpha up to sampling error
    rejected = 0
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        rejected += not fisher_z_test(cont(x=rng.normal(size=10000), y=rng.normal(size=10000)), "x", "y").independent
    assert within_binomial(rejected, 1000, 0.01)


def test_fisher_z_collinear_conditioning_set():
    rng = np.random.default_rng(1)
    x = rng.normal(size=300)
    d = cont(x=x, xc=x * 2.0, y=x + rng.normal(size=300))
    with pytest.raises(SingularCovariance):
        fisher_z_test(d, "y", "x", ["xc"])


def test_fisher_z_rejects_categorical():
    d = Dataset.from_columns({"x": np.arange(20.0), "c": ["a", "b"] * 10})
    with pytest.raises(MixedFamily):
        fisher_z_test(d, "x", "c")


def test_fisher_z_insufficient_samples():
    rng = np.random.default_rng(0)
    d = cont(a=rng.normal(size=5), b=rng.normal(size=5), c=rng.normal(size=5), e=rng.normal(size=5))
    with pytest.raises(InsufficientSamples):
        fisher_z_test(d, "a", "b", ["c", "e"])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.1, 50), st.floats(-10, 10))
def test_fisher_z_symmetric_and_scale_free(seed, scale, shift):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=400)
    x = z + rng.normal(size=400)
    y = 0.3 * x - z + rng.normal(size=400)
    a = fisher_z_test(cont(x=x, y=y, z=z), "x", "y", ["z"])
    b = fisher_z_test(cont(x=x, y=y, z=z), "y", "x", ["z"])
    c = fisher_z_test(cont(x=scale * x + shift, y=y, z=-scale * z), "x", "y", ["z"])
    assert a.statistic == pytest.approx(b.statistic, abs=1e-9)
    assert a.statistic == pytest.approx(c.statistic, abs=1e-9)


# -- G squared -----------------------------------------------------------------

def test_g_squared_identical_columns():
    x = np.random.default_rng(0).integers(0, 2, 500)
    assert not g_squared_test(cat(x=x, y=x.copy()), "x", "y").independent


def test_g_squared_calibration():
    rejected = 0
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        d = cat(x=rng.integers(0, 2, 10000), y=rng.integers(0, 2, 10000))
        rejected += not g_squared_test(d, "x", "y").independent
    assert within_binomial(rejected, 1000, 0.05)


def test_g_squared_collider_opens_when_conditioned():
    g = MixedGraph.from_directed("XZY", [("X", "Z"), ("Y", "Z")])
    scm = random_binary_scm(g, 3)
    scm.cpt["Z"] = {(0, 0): 0.1, (0, 1): 0.7, (1, 0): 0.7, (1, 1): 0.9}
    d = scm.sample(10000, 0)
    assert not g_squared_test(d, "X", "Y", ["Z"]).independent


def test_g_squared_flags_sparse_tables():
    rng = np.random.default_rng(0)
    d = cat(x=rng.integers(0, 3, 30), y=rng.integers(0, 3, 30), z=rng.integers(0, 3, 30))
    r = g_squared_test(d, "x", "y", ["z"])
    assert r.independent and r.flag == "insufficient_samples"


@given(st.integers(0, 10**6), st.permutations([0, 1, 2]))
def test_g_squared_relabeling_invariance(seed, perm):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 3, 600)
    y = (x + rng.integers(0, 2, 600)) % 3
    z = rng.integers(0, 2, 600)
    a = g_squared_test(cat(x=x, y=y, z=z), "x", "y", ["z"])
    b = g_squared_test(cat(x=np.array(perm)[x], y=y, z=z), "x", "y", ["z"])
    assert a.statistic == pytest.approx(b.statistic, rel=1e-12)


# -- oracle ----------------------------------------------------------------------

def test_oracle_examples():
    coll = oracle_ci_test(MixedGraph.from_directed("XZY", [("X", "Z"), ("Y", "Z")]))
    assert coll("X", "Y", ()).independent
    assert not coll("X", "Y", ("Z",)).independent
    chain = oracle_ci_test(MixedGraph.from_directed("XMY", [("X", "M"), ("M", "Y")]))
    assert chain("X", "Y", ("M",)).independent


@given(st.integers(0, 10**6))
def test_oracle_agrees_with_d_separation(seed):
    rng = np.random.default_rng(seed)
    g = random_dag(6, 0.4, rng)
    test = make_ci_test(None, TestConfig("oracle", truth=g))
    x, y = g.nodes[0], g.nodes[1]
    z = [v for v in g.nodes[2:] if rng.random() < 0.5]
    assert test(x, y, z).independent == d_separated(g, x, y, z)


# -- OLS and residuals -----------------------------------------------------------

def test_ols_exact_line():
    x = np.linspace(-1, 1, 50)
    r = ols_fit(cont(x=x, y=3 * x + 1), "y", ["x"])
    assert r.coef[0] == pytest.approx(3) and r.intercept == pytest.approx(1)
    assert np.allclose(r.residuals, 0, atol=1e-10)


def test_ols_without_regressors_is_the_mean():
    y = np.random.default_rng(0).normal(3, 1, 100)
    assert ols_fit(cont(y=y), "y").intercept == pytest.approx(y.mean())


def test_ols_recovers_coefficients():
    rng = np.random.default_rng(7)
    x1, x2 = rng.normal(size=10000), rng.normal(size=10000)
    r = ols_fit(cont(x1=x1, x2=x2, y=x1 + 2 * x2 + rng.normal(size=10000)), "y", ["x1", "x2"])
    assert np.all(np.abs(r.coef - [1, 2]) < 3 * 0.01)
    assert abs(r.residuals.mean()) < 1e-10


def test_pairwise_residual_examples():
    rng = np.random.default_rng(0)
    x = rng.normal(size=1000)
    assert np.allclose(pairwise_residual(cont(a=x, b=x.copy()), "a", "b"), 0, atol=1e-12)
    u = rng.uniform(-1, 1, 10000)
    xj = rng.normal(size=10000)
    r = pairwise_residual(cont(i=2 * xj + u, j=xj), "i", "j")
    assert abs(np.corrcoef(r, xj)[0, 1]) < 1e-9
    assert np.abs(r - (u - u.mean())).max() < 0.05
    with pytest.raises(ZeroVariance):
        pairwise_residual(cont(i=x, j=np.ones(1000)), "i", "j")


@given(st.integers(0, 10**6))
def test_residual_is_orthogonal(seed):
    rng = np.random.default_rng(seed)
    xj = rng.normal(size=200) * rng.uniform(0.1, 10)
    xi = rng.uniform(-3, 3) * xj + rng.normal(size=200)
    r = pairwise_residual(cont(i=xi, j=xj), "i", "j")
    assert abs(np.dot(r, xj - xj.mean())) / len(r) < 1e-9 * max(1.0, float(np.var(xj)))


# -- mutual information ----------------------------------------------------------

def test_mutual_information_examples():
    rng = np.random.default_rng(0)
    x = rng.normal(size=10000)
    assert mutual_information(x, x) >= math.log(16) - 0.2
    assert mutual_information(rng.uniform(size=10000), rng.uniform(size=10000)) < 0.05
    assert mutual_information(np.ones(1000), x[:1000]) == 0.0
    with pytest.raises(InsufficientSamples):
        mutual_information(x[:10], x[:10])


# -- BIC ---------------------------------------------------------------------------

def test_local_bic_binary_closed_form():
    d = cat(y=np.r_[np.ones(600, int), np.zeros(400, int)])
    want = 600 * math.log(0.6) + 400 * math.log(0.4) - math.log(1000) / 2
    assert local_bic(d, "y") == pytest.approx(want, rel=1e-12)


def test_local_bic_likelihood_dominance_and_degenerate_input():
    rng = np.random.default_rng(0)
    x = rng.normal(size=500)
    d = cont(x=x, y=2 * x + 0.1 * rng.normal(size=500), c=np.full(500, 4.0))
    assert local_bic(d, "y", ["x"]) > local_bic(d, "y")
    assert np.isfinite(local_bic(d, "c"))


def test_local_bic_rejects_mixed_families():
    d = Dataset.from_columns({"x": np.arange(20.0), "c": ["a", "b"] * 10})
    with pytest.raises(MixedFamily):
        local_bic(d, "x", ["c"])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_bic_decomposes(seed):
    rng = np.random.default_rng(seed)
    g = random_dag(5, 0.5, rng)
    d = random_binary_scm(g, rng).sample(300, rng)
    scorer = BicScorer(d)
    total = scorer.total(g)
    assert total == pytest.approx(sum(local_bic(d, v, g.parents(v)) for v in g.nodes))
    v = g.nodes[-1]
    extra = [u for u in g.nodes if u != v and u not in g.parents(v) and v not in g.ancestors(u)]
    if extra:
        g2 = g.with_edge(extra[0], v, TAIL, ARROW)
        diff = scorer.total(g2) - total
        assert diff == pytest.approx(local_bic(d, v, g2.parents(v)) - local_bic(d, v, g.parents(v)))
