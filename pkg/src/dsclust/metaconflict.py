"""Partitions of an evidence set and the metaconflict criterion."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .evidence import SimpleEvidence, combine, combine_conflict, weight_of_conflict
from .exceptions import SameCluster, TooLarge

FAVORABLE_TOL = 1e-12
BRUTE_FORCE_BOUND = 10**7


def mcf_from_conflicts(conflicts: Sequence[float], domain_conflict: float = 0.0) -> float:
    """``1 - (1 - c0) * prod(1 - c_i)``."""
    prod = 1.0 - domain_conflict
    for c in conflicts:
        prod *= 1.0 - c
    return 1.0 - prod


def cluster_members(assignment: Sequence[int], r: int) -> list[list[int]]:
    members: list[list[int]] = [[] for _ in range(r)]
    for idx, k in enumerate(assignment):
        members[k].append(idx)
    return members


@dataclass
class Partition:
    """Assignment of evidence (by position) to ``r`` clusters.

    ``conflicts`` caches the conflict of each cluster; clusters may be empty.
    """

    assignment: list[int]
    r: int
    conflicts: list[float]
    domain_conflict: float = 0.0

    @classmethod
    def from_assignment(cls, evidence: Sequence[SimpleEvidence], assignment: Sequence[int],
                        r: int, domain_conflict: float = 0.0) -> "Partition":
        assignment = [int(k) for k in assignment]
        if len(assignment) != len(evidence):
            raise ValueError(f"assignment has {len(assignment)} entries for {len(evidence)} evidence")
        if r < 1:
            raise ValueError("need at least one cluster")
        if any(not 0 <= k < r for k in assignment):
            raise ValueError(f"cluster index outside 0..{r - 1}")
        if not 0.0 <= domain_conflict < 1.0:
            raise ValueError(f"domain conflict {domain_conflict} not in [0, 1)")
        conflicts = [combine_conflict(evidence[j] for j in members)
                     for members in cluster_members(assignment, r)]
        return cls(assignment, r, conflicts, domain_conflict)

    def members(self) -> list[list[int]]:
        return cluster_members(self.assignment, self.r)

    def recompute(self, evidence: Sequence[SimpleEvidence]) -> list[float]:
        return [combine_conflict(evidence[j] for j in m) for m in self.members()]

    def copy(self) -> "Partition":
        return Partition(list(self.assignment), self.r, list(self.conflicts), self.domain_conflict)

    def apply(self, delta: "TransferDelta") -> None:
        self.assignment[delta.evidence_id] = delta.to_cluster
        self.conflicts[delta.from_cluster] = delta.new_from_conflict
        self.conflicts[delta.to_cluster] = delta.new_to_conflict

    def to_dict(self) -> dict:
        return {"r": self.r, "assignment": list(self.assignment), "mcf": metaconflict(self)}


def metaconflict(partition: Partition) -> float:
    return mcf_from_conflicts(partition.conflicts, partition.domain_conflict)


def log_sum_objective(partition: Partition) -> float:
    """Sum of cluster weights of conflict; monotone in metaconflict when c0 = 0."""
    if partition.domain_conflict != 0.0:
        raise ValueError("log-sum objective is defined for zero domain conflict only")
    return math.fsum(weight_of_conflict(c) for c in partition.conflicts)


def lowest_element_partition(evidence: Sequence[SimpleEvidence], r: int) -> Partition:
    """Cluster each evidence by the smallest element of its focal set.

    Every co-clustered pair then shares that element, so all conflicts are 0
    whenever the frame has at most ``r`` elements.
    """
    assignment = [min((ev.focal & -ev.focal).bit_length() - 1, r - 1) for ev in evidence]
    return Partition.from_assignment(evidence, assignment, r)


@dataclass
class TransferDelta:
    evidence_id: int
    from_cluster: int
    to_cluster: int
    new_from_conflict: float
    new_to_conflict: float
    new_mcf: float
    favorable: bool
    old_mcf: float = field(default=float("nan"), repr=False)

    def ratio_favorable(self, partition: Partition) -> bool:
        """The favorable-transfer test in its ratio form.

        ``(1 - c_j*) / (1 - c_j) > (1 - c_i) / (1 - c_i*)``, cross-multiplied
        to avoid dividing by a zero slack.
        """
        ci = partition.conflicts[self.from_cluster]
        cj = partition.conflicts[self.to_cluster]
        lhs = (1.0 - self.new_to_conflict) * (1.0 - self.new_from_conflict)
        rhs = (1.0 - ci) * (1.0 - cj)
        return lhs > rhs


def _transfer_mcf(partition: Partition, i: int, j: int, ci_new: float, cj_new: float) -> float:
    conflicts = list(partition.conflicts)
    conflicts[i] = ci_new
    conflicts[j] = cj_new
    return mcf_from_conflicts(conflicts, partition.domain_conflict)


def evaluate_transfer(partition: Partition, evidence: Sequence[SimpleEvidence],
                      q: int, k: int) -> TransferDelta:
    """Consequence of moving evidence ``q`` into cluster ``k``.

    Both affected cluster conflicts are recombined from scratch.
    """
    i = partition.assignment[q]
    if k == i:
        raise SameCluster(f"evidence {q} is already in cluster {k}")
    if not 0 <= k < partition.r:
        raise ValueError(f"cluster {k} outside 0..{partition.r - 1}")
    members = partition.members()
    ci_new = combine_conflict(evidence[j] for j in members[i] if j != q)
    cj_new = combine_conflict(evidence[j] for j in sorted(members[k] + [q]))
    current = metaconflict(partition)
    new = _transfer_mcf(partition, i, k, ci_new, cj_new)
    return TransferDelta(q, i, k, ci_new, cj_new, new, new < current - FAVORABLE_TOL, current)


def cluster_bodies(partition: Partition, evidence: Sequence[SimpleEvidence], theta: int):
    return [combine((evidence[j] for j in m), theta) for m in partition.members()]


def brute_force_min_mcf(evidence: Sequence[SimpleEvidence], r: int,
                        domain_conflict: float = 0.0) -> tuple[Partition, float]:
    """Exhaustive search over all ``r ** N`` assignments.

    Returns the lexicographically smallest optimal assignment.
    """
    n = len(evidence)
    if r ** n > BRUTE_FORCE_BOUND:
        raise TooLarge(f"{r}^{n} assignments exceed {BRUTE_FORCE_BOUND}")
    cache: dict[int, float] = {}

    def subset_conflict(mask: int) -> float:
        c = cache.get(mask)
        if c is None:
            c = cache[mask] = combine_conflict(evidence[j] for j in range(n) if mask >> j & 1)
        return c

    best: tuple[int, ...] | None = None
    best_mcf = math.inf
    for assignment in itertools.product(range(r), repeat=n):
        masks = [0] * r
        for j, k in enumerate(assignment):
            masks[k] |= 1 << j
        mcf = mcf_from_conflicts([subset_conflict(m) for m in masks], domain_conflict)
        if mcf < best_mcf:
            best, best_mcf = assignment, mcf
    partition = Partition.from_assignment(evidence, best, r, domain_conflict)
    return partition, metaconflict(partition)
