"""
Conflict within a group of evidence, and the metaconflict of a partition
=========================================================================

Each piece of evidence is a simple support function: some mass on one focal
set, the rest on the whole frame. Putting evidence that points at disjoint
sets into the same group produces conflict; the metaconflict of a
partition aggregates the conflict of every group.
"""
from dsclust.evidence import brute_force_conflict, combine_conflict, make_evidence, pairwise_conflict
from dsclust.metaconflict import Partition, brute_force_min_mcf, log_sum_objective, metaconflict

#%%
# Two pieces of evidence about disjoint sets conflict with mass m1 * m2.
a = make_evidence({1}, 0.5, 0)
b = make_evidence({2}, 0.5, 1)
c = make_evidence({1, 2}, 0.5, 2)
print("pairwise conflict a-b:", pairwise_conflict(a, b))
print("pairwise conflict a-c:", pairwise_conflict(a, c))

#%%
# Conflict of a whole group comes from the unnormalized conjunctive
# combination. The enumeration over all selections gives the same number.
group = [a, b, c]
print("combined:", combine_conflict(group), " enumerated:", brute_force_conflict(group))

three = [make_evidence({1}, 0.3, 0), make_evidence({2}, 0.4, 1), make_evidence({3}, 0.5, 2)]
print("three disjoint singletons:", combine_conflict(three))

#%%
# Metaconflict of a partition: 1 - prod(1 - c_i). Separating a and b removes
# all conflict.
evidence = [a, b, c]
together = Partition.from_assignment(evidence, [0, 0, 0], 2)
apart = Partition.from_assignment(evidence, [0, 1, 0], 2)
for name, p in (("together", together), ("apart", apart)):
    print(f"{name:9s} conflicts={p.conflicts} Mcf={metaconflict(p):.4f} "
          f"log-sum={log_sum_objective(p):.4f}")

#%%
# For small problems the exact optimum is found by enumeration.
best, mcf = brute_force_min_mcf(three, 2)
print("best 2-cluster split of three disjoint singletons:", best.assignment, "Mcf =", mcf)
