"""Independence tests, BIC scores and regression helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np
from scipy import stats as sps

from .data import Dataset, equal_frequency_codes
from .errors import (
    InsufficientSamples,
    MixedFamily,
    SingularCovariance,
    SingularDesign,
    ZeroVariance,
)
from .graph import MixedGraph, d_separated

FISHER_Z = "fisher_z"
G_SQUARED = "g_squared"
ORACLE = "oracle"

VARIANCE_FLOOR = 1e-12
MI_BINS = 16


class CiTestResult(NamedTuple):
    statistic: float
    p_value: float
    independent: bool
    flag: Optional[str] = None


@dataclass(frozen=True)
class TestConfig:
    """Which conditional-independence test to run and at what level.

    ``alpha`` defaults to 0.01 for continuous tests and 0.05 for the
    categorical G-test.  ``truth`` is the DAG queried by the oracle test.
    """

    test_kind: str = FISHER_Z
    alpha: Optional[float] = None
    truth: Optional[MixedGraph] = None

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.test_kind not in (FISHER_Z, G_SQUARED, ORACLE):
            raise ValueError(f"unknown test kind {self.test_kind!r}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", 0.05 if self.test_kind == G_SQUARED else 0.01)
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.test_kind == ORACLE and self.truth is None:
            raise ValueError("the oracle test needs a truth DAG")


CiTest = Callable[[str, str, Sequence[str]], CiTestResult]


# ---------------------------------------------------------------------------
# Fisher z
# ---------------------------------------------------------------------------


def _partial_corr(corr: np.ndarray, i: int, j: int, cond: Sequence[int]) -> float:
    if not cond:
        return float(corr[i, j])
    cond = list(cond)
    szz = corr[np.ix_(cond, cond)]
    if np.linalg.cond(szz) > 1e10:
        raise SingularCovariance("conditioning set is collinear")
    sxz = corr[np.ix_([i, j], cond)]
    resid = corr[np.ix_([i, j], [i, j])] - sxz @ np.linalg.solve(szz, sxz.T)
    if resid[0, 0] <= 1e-10 or resid[1, 1] <= 1e-10:
        raise SingularCovariance("a tested variable is a linear function of the conditioning set")
    return float(resid[0, 1] / np.sqrt(resid[0, 0] * resid[1, 1]))


def _fisher_z_from_corr(corr, n, i, j, cond, alpha) -> CiTestResult:
    k = len(cond)
    if n <= k + 3:
        raise InsufficientSamples(f"Fisher z needs n > |z| + 3 (n={n}, |z|={k})")
    rho = _partial_corr(corr, i, j, cond)
    rho = float(np.clip(rho, -1.0 + 1e-15, 1.0 - 1e-15))
    stat = float(np.sqrt(n - k - 3) * np.arctanh(rho))
    p = float(min(1.0, 2.0 * sps.norm.sf(abs(stat))))
    return CiTestResult(stat, p, p >= alpha)


def _correlation(matrix: np.ndarray) -> np.ndarray:
    centered = matrix - matrix.mean(axis=0)
    sd = np.sqrt((centered ** 2).mean(axis=0))
    if np.any(sd <= np.sqrt(VARIANCE_FLOOR)):
        bad = int(np.argmin(sd))
        raise SingularCovariance(f"column {bad} has zero variance")
    z = centered / sd
    corr = (z.T @ z) / len(z)
    np.fill_diagonal(corr, 1.0)
    return corr


def _require_continuous(d: Dataset, names) -> None:
    for v in names:
        if not d.is_continuous(v):
            raise MixedFamily(f"Fisher z needs continuous variables; {v!r} is {d.kind(v)}")


def fisher_z_test(d: Dataset, x: str, y: str, z: Iterable[str] = (), cfg: Optional[TestConfig] = None) -> CiTestResult:
    """Partial-correlation test of ``x`` ⟂ ``y`` | ``z``.

    The statistic is ``sqrt(n - |z| - 3) * atanh(rho)`` with a two-sided
    normal p-value; ``independent`` means ``p >= alpha``.
    """
    cfg = cfg or TestConfig(FISHER_Z)
    z = list(z)
    names = [x, y] + z
    _require_continuous(d, names)
    corr = _correlation(d.matrix(names))
    return _fisher_z_from_corr(corr, d.n, 0, 1, list(range(2, len(names))), cfg.alpha)


# ---------------------------------------------------------------------------
# G squared
# ---------------------------------------------------------------------------


def _observed_levels(codes: np.ndarray) -> int:
    return len(np.unique(codes))


def _g_squared(codes: np.ndarray, cx: int, cy: int, cz: Sequence[int], alpha: float) -> CiTestResult:
    n = codes.shape[0]
    x = codes[:, cx]
    y = codes[:, cy]
    nx = int(x.max()) + 1
    ny = int(y.max()) + 1
    if cz:
        zc = codes[:, list(cz)]
        _, stratum = np.unique(zc, axis=0, return_inverse=True)
        stratum = stratum.ravel()
        n_strata = int(stratum.max()) + 1
    else:
        stratum = np.zeros(n, dtype=np.intp)
        n_strata = 1
    flat = (stratum * nx + x) * ny + y
    obs = np.bincount(flat, minlength=n_strata * nx * ny).reshape(n_strata, nx, ny).astype(float)
    tot = obs.sum(axis=(1, 2), keepdims=True)
    exp = obs.sum(axis=2, keepdims=True) * obs.sum(axis=1, keepdims=True) / np.where(tot > 0, tot, 1.0)
    mask = obs > 0
    g2 = float(2.0 * np.sum(obs[mask] * np.log(obs[mask] / exp[mask])))
    df = (_observed_levels(x) - 1) * (_observed_levels(y) - 1)
    for c in cz:
        df *= _observed_levels(codes[:, c])
    if df <= 0:
        return CiTestResult(0.0, 1.0, True)
    if n < 10 * df:
        return CiTestResult(g2, 1.0, True, flag="insufficient_samples")
    p = float(sps.chi2.sf(max(g2, 0.0), df))
    return CiTestResult(g2, p, p >= alpha)


def g_squared_test(d: Dataset, x: str, y: str, z: Iterable[str] = (), cfg: Optional[TestConfig] = None) -> CiTestResult:
    """Likelihood-ratio (G²) test on the contingency table stratified by ``z``.

    Degrees of freedom are ``(|x|-1)(|y|-1)·Π|z_i|`` over observed levels.
    With fewer than ``10·df`` samples the test cannot be trusted; the pair
    is reported independent with ``flag="insufficient_samples"``.
    """
    cfg = cfg or TestConfig(G_SQUARED)
    z = list(z)
    names = [x, y] + z
    for v in names:
        if not d.is_categorical(v):
            raise MixedFamily(f"G² needs categorical variables; {v!r} is {d.kind(v)}")
    codes = np.column_stack([d.codes(v) for v in names])
    return _g_squared(codes, 0, 1, list(range(2, len(names))), cfg.alpha)


# ---------------------------------------------------------------------------
# Oracle and dispatch
# ---------------------------------------------------------------------------


def oracle_ci_test(truth: MixedGraph) -> CiTest:
    """Exact test answering with d-separation in ``truth``."""
    if not truth.is_dag():
        raise ValueError("oracle truth must be a DAG")

    def test(x, y, z=()):
        sep = d_separated(truth, x, y, z)
        return CiTestResult(0.0 if sep else np.inf, 1.0 if sep else 0.0, sep)

    test.nodes = truth.nodes
    return test


def make_ci_test(d: Optional[Dataset], cfg: TestConfig) -> CiTest:
    """Bind a test to a dataset, precomputing what can be shared."""
    if cfg.test_kind == ORACLE:
        return oracle_ci_test(cfg.truth)
    if d is None:
        raise ValueError("a dataset is required for statistical tests")
    pos = {v: i for i, v in enumerate(d.names)}
    if cfg.test_kind == FISHER_Z:
        _require_continuous(d, d.names)
        corr = _correlation(d.values)
        n = d.n

        def test(x, y, z=()):
            return _fisher_z_from_corr(corr, n, pos[x], pos[y], [pos[v] for v in z], cfg.alpha)

    else:
        for v in d.names:
            if not d.is_categorical(v):
                raise MixedFamily(f"G² needs categorical variables; {v!r} is {d.kind(v)}")
        codes = np.column_stack([d.codes(v) for v in d.names]) if d.p else np.zeros((d.n, 0), int)

        def test(x, y, z=()):
            return _g_squared(codes, pos[x], pos[y], [pos[v] for v in z], cfg.alpha)

    test.nodes = d.names
    return test


# ---------------------------------------------------------------------------
# Regression, residuals, BIC
# ---------------------------------------------------------------------------


class OlsResult(NamedTuple):
    coef: np.ndarray
    intercept: float
    residuals: np.ndarray
    regressors: tuple


def ols_arrays(y: np.ndarray, x: np.ndarray) -> tuple:
    """Least squares with intercept on raw arrays; returns (coef, intercept, resid)."""
    n = len(y)
    k = x.shape[1]
    if n <= k + 1:
        raise InsufficientSamples(f"OLS needs n > k + 1 (n={n}, k={k})")
    ym = y.mean()
    if k == 0:
        return np.zeros(0), float(ym), y - ym
    xm = x.mean(axis=0)
    xc = x - xm
    if np.linalg.matrix_rank(xc) < k:
        raise SingularDesign("regressors are collinear")
    coef, *_ = np.linalg.lstsq(xc, y - ym, rcond=None)
    resid = (y - ym) - xc @ coef
    return coef, float(ym - xm @ coef), resid


def ols_fit(d: Dataset, target: str, regressors: Sequence[str] = ()) -> OlsResult:
    """Ordinary least squares of ``target`` on ``regressors`` with intercept."""
    regressors = tuple(regressors)
    _require_continuous(d, (target,) + regressors)
    coef, intercept, resid = ols_arrays(d.column(target), d.matrix(regressors))
    return OlsResult(coef, intercept, resid, regressors)


def residualize(xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
    """Residual of regressing ``xi`` on ``xj`` after centering both.

    ``r = xi - cov(xi, xj) / var(xj) * xj``.
    """
    xi = xi - xi.mean()
    xj = xj - xj.mean()
    var = float(xj @ xj) / len(xj)
    if var <= VARIANCE_FLOOR:
        raise ZeroVariance("regressor has zero variance")
    return xi - (float(xi @ xj) / len(xj) / var) * xj


def pairwise_residual(d: Dataset, i: str, j: str) -> np.ndarray:
    _require_continuous(d, (i, j))
    return residualize(d.column(i), d.column(j))


def mutual_information(x, y, bins: int = MI_BINS) -> float:
    """Mutual information (nats) under equal-frequency binning of both axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    n = len(x)
    if n < 64:
        raise InsufficientSamples(f"mutual information needs n >= 64, got {n}")
    cx = equal_frequency_codes(x, bins)
    cy = equal_frequency_codes(y, bins)
    kx = int(cx.max()) + 1
    ky = int(cy.max()) + 1
    joint = np.bincount(cx * ky + cy, minlength=kx * ky).reshape(kx, ky) / n
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    mask = joint > 0
    mi = float(np.sum(joint[mask] * np.log(joint[mask] / (px @ py)[mask])))
    return max(mi, 0.0)


def _gaussian_local_bic(y: np.ndarray, x: np.ndarray) -> float:
    n = len(y)
    k = x.shape[1]
    if k:
        _, _, resid = ols_arrays(y, x)
    else:
        resid = y - y.mean()
    rss = float(resid @ resid)
    var = max(rss / n, VARIANCE_FLOOR)
    ll = -0.5 * n * np.log(2 * np.pi * var) - rss / (2 * var)
    return ll - 0.5 * np.log(n) * (k + 2)


def _multinomial_local_bic(codes: np.ndarray, n_levels: int, parent_codes: np.ndarray, parent_levels: Sequence[int]) -> float:
    n = len(codes)
    if parent_codes.shape[1]:
        _, config = np.unique(parent_codes, axis=0, return_inverse=True)
        config = config.ravel()
        n_cfg = int(config.max()) + 1
    else:
        config = np.zeros(n, dtype=np.intp)
        n_cfg = 1
    counts = np.bincount(config * n_levels + codes, minlength=n_cfg * n_levels).reshape(n_cfg, n_levels).astype(float)
    totals = counts.sum(axis=1, keepdims=True)
    mask = counts > 0
    ll = float(np.sum(counts[mask] * np.log((counts / np.where(totals > 0, totals, 1.0))[mask])))
    n_params = (n_levels - 1) * int(np.prod(parent_levels)) if len(parent_levels) else n_levels - 1
    return ll - 0.5 * np.log(n) * n_params


def local_bic(d: Dataset, node: str, parents: Iterable[str] = ()) -> float:
    """Local BIC term ``LL - (log n / 2) * free parameters`` for one family.

    Linear-Gaussian for continuous families (``|parents| + 2`` parameters),
    multinomial for categorical ones (``(levels - 1) * Π parent levels``).
    """
    parents = list(parents)
    kinds = {d.kind(v) for v in [node] + parents}
    if len(kinds) > 1:
        raise MixedFamily(f"family of {node!r} mixes continuous and categorical variables")
    if d.is_continuous(node):
        return _gaussian_local_bic(d.column(node), d.matrix(parents))
    pc = np.column_stack([d.codes(p) for p in parents]) if parents else np.zeros((d.n, 0), dtype=np.intp)
    return _multinomial_local_bic(d.codes(node), d.n_levels(node), pc, [d.n_levels(p) for p in parents])


class BicScorer:
    """Memoised ``local_bic`` for repeated queries during a search."""

    def __init__(self, d: Dataset):
        self.d = d
        self._cache = {}

    def __call__(self, node: str, parents: Iterable[str]) -> float:
        key = (node, frozenset(parents))
        val = self._cache.get(key)
        if val is None:
            order = sorted(key[1], key=self.d.names.index)
            val = self._cache[key] = local_bic(self.d, node, order)
        return val

    def total(self, dag: MixedGraph) -> float:
        return float(sum(self(v, dag.parents(v)) for v in dag.nodes))
