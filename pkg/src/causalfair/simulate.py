"""Synthetic graphs and data generators used by the demos and the test-suite."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from .data import Dataset
from .graph import MixedGraph


def random_dag(n_nodes: int, edge_prob: float, rng, names: Optional[Sequence[str]] = None) -> MixedGraph:
    """Erdős–Rényi DAG: each forward pair of a random permutation is an edge with ``edge_prob``."""
    rng = np.random.default_rng(rng)
    names = list(names) if names is not None else [f"X{i + 1}" for i in range(n_nodes)]
    perm = rng.permutation(n_nodes)
    arcs = []
    for a, b in itertools.combinations(range(n_nodes), 2):
        if rng.random() < edge_prob:
            arcs.append((names[perm[a]], names[perm[b]]))
    return MixedGraph.from_directed(names, arcs)


def _noise(kind: str, std: float, size: int, rng) -> np.ndarray:
    if kind == "gaussian":
        return rng.normal(0.0, std, size)
    if kind == "uniform":
        half = std * np.sqrt(3.0)
        return rng.uniform(-half, half, size)
    raise ValueError(f"unknown noise kind {kind!r}")


def sample_linear_sem(
    dag: MixedGraph,
    weights: Mapping[Tuple[str, str], float],
    noise_std: Mapping[str, float],
    n: int,
    rng,
    noise: str = "gaussian",
) -> Dataset:
    """Sample ``n`` rows from ``X_v = sum_u w[u, v] X_u + e_v``.

    ``noise`` is ``"gaussian"`` or ``"uniform"``; both are centred and
    scaled to the given standard deviation.
    """
    rng = np.random.default_rng(rng)
    cols: Dict[str, np.ndarray] = {}
    for v in dag.topological_order():
        x = _noise(noise, noise_std.get(v, 1.0), n, rng)
        for u in dag.parents(v):
            x = x + weights[(u, v)] * cols[u]
        cols[v] = x
    return Dataset.continuous(np.column_stack([cols[v] for v in dag.nodes]), dag.nodes)


# The six-variable benchmark: X5 = 1.3 X2 + 1.2 X3 + e5 as printed; the
# remaining weights and noise scales are our own choice.
BENCHMARK_NODES = ("X1", "X2", "X3", "X4", "X5", "X6")
BENCHMARK_WEIGHTS = {
    ("X1", "X2"): 1.5,
    ("X1", "X3"): -0.9,
    ("X2", "X4"): 0.7,
    ("X2", "X5"): 1.3,
    ("X3", "X5"): 1.2,
    ("X5", "X6"): 0.6,
    ("X4", "X6"): -1.0,
}
BENCHMARK_NOISE = {"X1": 1.0, "X2": 1.0, "X3": 1.0, "X4": 1.0, "X5": 1.3, "X6": 1.0}


def benchmark_dag() -> MixedGraph:
    return MixedGraph.from_directed(BENCHMARK_NODES, BENCHMARK_WEIGHTS)


def benchmark_data(n: int = 10000, noise: str = "uniform", rng=0) -> Dataset:
    return sample_linear_sem(benchmark_dag(), BENCHMARK_WEIGHTS, BENCHMARK_NOISE, n, rng, noise)


# ---------------------------------------------------------------------------
# Binary structural causal models with explicit CPTs
# ---------------------------------------------------------------------------


@dataclass
class BinaryScm:
    """Binary SCM ``V = 1[U_V < p_V(parents)]`` with independent uniform ``U_V``.

    ``cpt[v]`` maps each parent configuration (tuple of 0/1 in the order of
    ``dag.parents(v)``) to ``P(V = 1 | parents)``.
    """

    dag: MixedGraph
    cpt: Dict[str, Dict[Tuple[int, ...], float]]

    def joint(self) -> Tuple[np.ndarray, np.ndarray]:
        """All ``2^k`` configurations (rows in node order) and their probabilities."""
        nodes = self.dag.nodes
        configs = np.array(list(itertools.product((0, 1), repeat=len(nodes))), dtype=float)
        probs = np.ones(len(configs))
        pos = {v: i for i, v in enumerate(nodes)}
        for v in nodes:
            pa = self.dag.parents(v)
            for r, row in enumerate(configs):
                p1 = self.cpt[v][tuple(int(row[pos[u]]) for u in pa)]
                probs[r] *= p1 if row[pos[v]] == 1 else 1.0 - p1
        return configs, probs

    def exact_dataset(self, **meta) -> Dataset:
        configs, probs = self.joint()
        keep = probs > 0
        return Dataset.categorical(configs[keep], self.dag.nodes, levels={v: ("0", "1") for v in self.dag.nodes},
                                   weights=probs[keep], **meta)

    def sample(self, n: int, rng, **meta) -> Dataset:
        rng = np.random.default_rng(rng)
        nodes = self.dag.nodes
        cols: Dict[str, np.ndarray] = {}
        for v in self.dag.topological_order():
            pa = self.dag.parents(v)
            p1 = np.array([self.cpt[v][tuple(int(cols[u][i]) for u in pa)] for i in range(n)]) if pa else \
                np.full(n, self.cpt[v][()])
            cols[v] = (rng.random(n) < p1).astype(int)
        return Dataset.categorical(np.column_stack([cols[v] for v in nodes]), nodes,
                                   levels={v: ("0", "1") for v in nodes}, **meta)


def random_binary_scm(dag: MixedGraph, rng, low: float = 0.1, high: float = 0.9) -> BinaryScm:
    rng = np.random.default_rng(rng)
    cpt = {}
    for v in dag.nodes:
        pa = dag.parents(v)
        cpt[v] = {cfg: float(rng.uniform(low, high)) for cfg in itertools.product((0, 1), repeat=len(pa))}
    return BinaryScm(dag, cpt)


# ---------------------------------------------------------------------------
# Confounder-or-mediator flip
# ---------------------------------------------------------------------------

# X drives both the sensitive attribute A and the outcome Y; A raises the
# mediator M, which lowers Y.  The collider A -> M <- W compels every edge
# except X - A, so the equivalence class holds two DAGs: with X -> A the
# variable X is a confounder, with A -> X it is a mediator.
FLIP_NODES = ("X", "A", "W", "M", "Y")
FLIP_ARCS = (("X", "A"), ("X", "Y"), ("A", "M"), ("W", "M"), ("A", "Y"), ("M", "Y"))


def flip_scm() -> BinaryScm:
    dag = MixedGraph.from_directed(FLIP_NODES, FLIP_ARCS)
    cpt = {
        "X": {(): 0.5},
        "A": {(0,): 0.2, (1,): 0.8},
        "W": {(): 0.5},
        "M": {(a, w): 0.2 + 0.5 * a + 0.2 * w for a in (0, 1) for w in (0, 1)},
        "Y": {(x, a, m): 0.35 + 0.4 * x + 0.05 * a - 0.3 * m for x in (0, 1) for a in (0, 1) for m in (0, 1)},
    }
    return BinaryScm(dag, cpt)
