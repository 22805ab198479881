"""
Neural-iterative hybrid on 63 pieces of evidence into 6 clusters
=================================================================

The network does the bulk of the clustering; its decoded partition is then
handed to the hill climber, which only has to make a few repairs. The
metaconflict of the decoded partition is recorded at every iteration of
both phases. The network minimizes a pairwise surrogate, so the neural part
of the curve need not go down monotonically.
"""
import numpy as np

from dsclust.bench import ProblemSpec
from dsclust.hybrid import run_hybrid, run_iterative

evidence = ProblemSpec.exhaustive(6).generate(0)
report = run_hybrid(evidence, 6, seed=0)
print(f"neural iterations {report.neural_iterations}, iterative moves {report.iterative_moves}")
print(f"Mcf after neural phase {report.neural_mcf:.4f}, final {report.final_mcf:.6f}")

cold = [run_iterative(evidence, 6, seed=s).iterative_moves for s in range(5)]
print("cold-start moves for comparison:", cold)

#%%
for phase, it, mcf in report.mcf_trace:
    if phase == "iterative" or it % 5 == 1:
        print(f"{phase:9s} {it:3d} {mcf:.5f}")

#%%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    trace = np.array([(it, mcf) for _, it, mcf in report.mcf_trace])
    n = report.neural_iterations
    plt.plot(trace[:n, 0], trace[:n, 1], "k-", label="neural")
    plt.plot(trace[n - 1:, 0], trace[n - 1:, 1], "-", color="0.6", label="iterative")
    plt.xlabel("iteration")
    plt.ylabel("metaconflict")
    plt.legend()
    plt.savefig("hybrid_trace.png", dpi=120)
    print("wrote hybrid_trace.png")
