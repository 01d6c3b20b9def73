"""Suppes-Bayes networks and random-walk discrimination scores.

Every (variable = value) pair becomes a node.  An edge a -> y survives
the filter only if a is not later than y in the tier order and
P(y | a) > P(y | not a); hill climbing on BIC then keeps the useful
edges, weighted by the probability raising.  A walk that starts at a
sensitive-group node and follows the weights reaches the negative or the
positive decision first; the fraction reaching the negative one is ds-.

Run:  python demos/sbcn_random_walks.py
"""

from causalfair.sbcn import BernoulliNode, WalkConfig, audit_edges, learn_sbcn, random_walk_score, sbcn_as_causal_graph
from causalfair.simulate import flip_scm


def main():
    tiers = {"X": 0, "A": 0, "W": 0, "M": 1, "Y": 2}
    d = flip_scm().sample(20000, rng=1, tiers=tiers)
    g = learn_sbcn(d, rng_seed=0)
    print(f"{len(g.weights)} edges after {len(g.trajectory) - 1} accepted moves, BIC {g.score:.1f}")
    for (a, y), w in sorted(g.weights.items(), key=lambda kv: -kv[1]):
        print(f"  {a} -> {y}   W = {w:.3f}")
    print("edges failing the Suppes audit:", audit_edges(d, g))

    warnings = []
    print("variable-level graph:", sbcn_as_causal_graph(g, d.names, warnings).directed_edges())
    for w in warnings:
        print("  note:", w)

    cfg = WalkConfig(delta_plus=BernoulliNode("Y", "1"), delta_minus=BernoulliNode("Y", "0"),
                     n_walks=100000, rng_seed=0)
    for label, group in (("1", "privileged"), ("0", "protected")):
        r = random_walk_score(g, BernoulliNode("A", label), cfg)
        print(f"{group:10s} A={label}: ds- {r.ds_minus:.3f}  ds+ {r.ds_plus:.3f}  unresolved {r.unresolved:.3f}"
              + (f"  ({r.flag})" if r.flag else ""))


if __name__ == "__main__":
    main()
