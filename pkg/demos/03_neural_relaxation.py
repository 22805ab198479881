"""
Relaxation network
==================

One neuron per (evidence, cluster). Neurons in a column inhibit each other
in proportion to the weight of conflict -log(1 - c_jk) between their
evidence; neurons in a row inhibit each other so every evidence picks one
cluster. We watch the argmax decode and its crispness while the network
settles.
"""
import numpy as np

from dsclust.bench import gen_exhaustive
from dsclust.metaconflict import Partition, metaconflict
from dsclust.neural import NetworkParams, build_network, decode, init_state, run_to_convergence

params = NetworkParams.default()
print(params)

r = 4
evidence = gen_exhaustive(r, np.random.default_rng(3))
matrix, _ = build_network(evidence, r, params)
state = init_state(len(evidence), r, params, np.random.default_rng(0))

snapshots = []
state, iterations, converged = run_to_convergence(state, matrix, params, snapshots.append)
print(f"converged={converged} after {iterations} iterations")

#%%
for s in snapshots[::5] + [snapshots[-1]]:
    assignment, crisp = decode(s)
    mcf = metaconflict(Partition.from_assignment(evidence, assignment, r))
    print(f"t={s.t:3d} crispness={crisp:.3f} Mcf(decode)={mcf:.4f}")

#%%
# Final output voltages: rows are evidence, columns clusters.
np.set_printoptions(precision=2, suppress=True)
for ev, row in zip(evidence, snapshots[-1].V):
    print(f"{str(ev.elements):14s}", row)
