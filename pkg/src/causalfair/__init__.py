"""Causal discovery and discrimination measurement.

Discovery algorithms (PC, FCI, GES, DirectLiNGAM, SBCN) produce a graph
over the dataset's variables; :func:`measure_range` then evaluates
discrimination measures on every DAG consistent with that graph.
"""

from .data import Dataset
from .errors import (
    CausalFairError,
    CyclicGraph,
    DataError,
    EmptyClass,
    EmptyDataset,
    EmptyGroup,
    LimitExceeded,
    MissingValue,
    MixedFamily,
    NotApplicable,
    NotExtendable,
    SchemaMismatch,
)
from .fairness import FairnessQuery, FairnessReport, classify_roles, measure_range, path_specific_effect
from .fci import PagResult, fci_orient, run_fci
from .ges import run_ges
from .graph import (
    ARROW,
    CIRCLE,
    TAIL,
    BackgroundKnowledge,
    EdgeMark,
    MixedGraph,
    apply_meek_rules,
    complete_to_cpdag,
    d_separated,
    enumerate_consistent_extensions,
    extend_pdag,
    unshielded_triples,
)
from .io import export_dot, load_dataset, load_schema, parse_dot
from .lingam import run_direct_lingam
from .pc import PcResult, run_pc
from .sbcn import SbcnGraph, WalkConfig, learn_sbcn, random_walk_score, sbcn_as_causal_graph
from .stats import TestConfig, make_ci_test, oracle_ci_test

__version__ = "0.1.0"

__all__ = [
    "ARROW",
    "CIRCLE",
    "TAIL",
    "BackgroundKnowledge",
    "CausalFairError",
    "CyclicGraph",
    "DataError",
    "Dataset",
    "EdgeMark",
    "EmptyClass",
    "EmptyDataset",
    "EmptyGroup",
    "FairnessQuery",
    "FairnessReport",
    "LimitExceeded",
    "MissingValue",
    "MixedFamily",
    "MixedGraph",
    "NotApplicable",
    "NotExtendable",
    "PagResult",
    "PcResult",
    "SbcnGraph",
    "SchemaMismatch",
    "TestConfig",
    "WalkConfig",
    "apply_meek_rules",
    "classify_roles",
    "complete_to_cpdag",
    "d_separated",
    "enumerate_consistent_extensions",
    "export_dot",
    "extend_pdag",
    "fci_orient",
    "learn_sbcn",
    "load_dataset",
    "load_schema",
    "make_ci_test",
    "measure_range",
    "oracle_ci_test",
    "parse_dot",
    "path_specific_effect",
    "random_walk_score",
    "run_direct_lingam",
    "run_fci",
    "run_ges",
    "run_pc",
    "sbcn_as_causal_graph",
    "unshielded_triples",
]
