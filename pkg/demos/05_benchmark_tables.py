"""
Comparing the three methods
===========================

Ten repeats per problem size, every method run on the same instance within
a repeat. First the 2^r - 1 into r family, then the six-cluster problem with
random focal sets. Wall-clock seconds are hardware-bound; iteration and move
counts are reported instead.

The same numbers come out of the command line:

    dsclust bench --sizes 3,4,5,6 --repeats 10 --out table.csv
    dsclust bench --family random --clusters 6 --sizes 50,60,70 --repeats 10 --out six.csv
"""
from dsclust.bench import ProblemSpec, run_experiment

METRICS = ["best_mcf", "mean_mcf", "mean_conflict_per_cluster", "mean_conflict_per_evidence",
           "mean_neural_iterations", "mean_iterative_moves"]


def table(specs, methods=("neural", "iterative", "hybrid"), repeats=10):
    reports = [run_experiment(s, methods, repeats, jobs=4) for s in specs]
    print("M".rjust(38), *(f"{s.n_evidence:>9d}" for s in specs))
    print("r".rjust(38), *(f"{s.n_clusters:>9d}" for s in specs))
    for m in methods:
        for metric in METRICS:
            vals = [rep.aggregates[m].get(metric) for rep in reports]
            if all(v is None for v in vals):
                continue
            print(f"{m:9s} {metric:28s}", *(f"{v:9.4f}" for v in vals))
    print()


if __name__ == "__main__":
    table([ProblemSpec.exhaustive(r) for r in (3, 4, 5, 6)])
    table([ProblemSpec.random(6, M) for M in (50, 60, 70)], methods=("neural", "hybrid"))
