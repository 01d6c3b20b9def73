"""When one undirected edge decides whether a variable confounds or mediates.

The five binary variables X, A, W, M, Y come from a small structural model
in which A is the sensitive attribute and Y the decision.  The collider
A -> M <- W fixes most orientations, but nothing in the data can orient
X - A: with X -> A the variable X is a confounder, with A -> X it is a
mediator.  The indirect-discrimination estimate changes sign between the
two readings, so the honest answer is a range.

Run:  python demos/flip_equivalence_class.py
"""

from causalfair import FairnessQuery, complete_to_cpdag, measure_range, run_pc
from causalfair.fairness import ID, MEASURES, TE
from causalfair.simulate import flip_scm
from causalfair.stats import TestConfig


def show_report(title, report):
    print(f"\n{title}: {len(report.dags)} DAG(s) in the class")
    for k, (dag, roles) in enumerate(zip(report.dags, report.roles)):
        conf = ", ".join(sorted(roles.confounders)) or "-"
        med = ", ".join(sorted(roles.mediators)) or "-"
        te = report.values[TE][k].value
        idv = report.values[ID][k].value
        print(f"  DAG {k}: X-A oriented {'X->A' if dag.is_directed('X', 'A') else 'A->X'};"
              f" confounders {conf}; mediators {med}; TE {te:+.3f}; ID {idv:+.3f}")
    for m in MEASURES:
        lo, hi = report.range(m)
        print(f"  {m:8s} [{lo:+.3f}, {hi:+.3f}]  {report.sign(m)}")


def main():
    scm = flip_scm()
    q = FairnessQuery("A", "Y", privileged="1", protected="0", positive="1")

    # 1. the population itself: exact joint distribution, true equivalence class
    cpdag = complete_to_cpdag(scm.dag)
    print("undirected edges in the true CPDAG:", cpdag.undirected_edges())
    show_report("exact distribution", measure_range(cpdag, scm.exact_dataset(), q))

    # 2. what a data analyst would see: a sample and a learned CPDAG
    sample = scm.sample(20000, rng=0)
    learned = run_pc(sample, TestConfig("g_squared")).cpdag
    print("\nPC on 20000 samples recovers the class:", learned == cpdag)
    show_report("sample of 20000", measure_range(learned, sample, q))


if __name__ == "__main__":
    main()
