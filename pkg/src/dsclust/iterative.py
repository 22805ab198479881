"""Best-improvement hill climbing by single-evidence transfers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .evidence import BodyOfEvidence, SimpleEvidence, combine
from .metaconflict import (FAVORABLE_TOL, Partition, TransferDelta, cluster_bodies,
                           evaluate_transfer, mcf_from_conflicts, metaconflict)


@dataclass(frozen=True)
class MoveStep:
    iteration: int
    evidence_id: int
    from_cluster: int
    to_cluster: int
    mcf_after: float

    def to_dict(self) -> dict:
        return {"iteration": self.iteration, "evidence_id": self.evidence_id,
                "from_cluster": self.from_cluster, "to_cluster": self.to_cluster,
                "mcf_after": self.mcf_after}


@dataclass
class MoveTrace:
    initial_mcf: float
    steps: list[MoveStep] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def n_moves(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {"initial_mcf": self.initial_mcf, "budget_exhausted": self.budget_exhausted,
                "steps": [s.to_dict() for s in self.steps]}


def _theta(evidence: Sequence[SimpleEvidence]) -> int:
    theta = 0
    for ev in evidence:
        theta |= ev.focal
    return theta or 1


def best_move(partition: Partition, evidence: Sequence[SimpleEvidence],
              bodies: Optional[list[BodyOfEvidence]] = None) -> Optional[TransferDelta]:
    """Most favorable single transfer, or None at a local minimum.

    Scans evidence in id order and target clusters in index order; a
    candidate replaces the incumbent only when strictly better, so ties go to
    the lowest evidence id, then the lowest target cluster.
    """
    theta = _theta(evidence)
    if bodies is None:
        bodies = cluster_bodies(partition, evidence, theta)
    members = partition.members()
    current = metaconflict(partition)
    conflicts = partition.conflicts
    c0 = partition.domain_conflict
    best: Optional[TransferDelta] = None
    for q, ev in enumerate(evidence):
        i = partition.assignment[q]
        ci_new = combine((evidence[j] for j in members[i] if j != q), theta).conflict
        for k in range(partition.r):
            if k == i:
                continue
            cj_new = bodies[k].fold(ev).conflict
            trial = list(conflicts)
            trial[i] = ci_new
            trial[k] = cj_new
            new = mcf_from_conflicts(trial, c0)
            if new < current - FAVORABLE_TOL and (best is None or new < best.new_mcf):
                best = TransferDelta(q, i, k, ci_new, cj_new, new, True, current)
    return best


def optimize(partition: Partition, evidence: Sequence[SimpleEvidence],
             max_moves: Optional[int] = None) -> tuple[Partition, MoveTrace]:
    """Apply best moves until none is favorable or the budget runs out.

    The input partition is left untouched. Default budget is ``10 * N * r``.
    """
    if max_moves is None:
        max_moves = 10 * len(evidence) * partition.r
    if max_moves < 0:
        raise ValueError("max_moves must be nonnegative")
    part = partition.copy()
    theta = _theta(evidence)
    bodies = cluster_bodies(part, evidence, theta)
    trace = MoveTrace(initial_mcf=metaconflict(part))
    while True:
        if trace.n_moves >= max_moves:
            trace.budget_exhausted = best_move(part, evidence, bodies) is not None
            break
        delta = best_move(part, evidence, bodies)
        if delta is None:
            break
        part.apply(delta)
        members = part.members()
        for k in (delta.from_cluster, delta.to_cluster):
            bodies[k] = combine((evidence[j] for j in members[k]), theta)
            part.conflicts[k] = bodies[k].conflict
        trace.steps.append(MoveStep(trace.n_moves + 1, delta.evidence_id, delta.from_cluster,
                                    delta.to_cluster, metaconflict(part)))
    return part, trace


def is_local_minimum(partition: Partition, evidence: Sequence[SimpleEvidence]) -> bool:
    """Exhaustive re-scan through :func:`evaluate_transfer`, independent of best_move."""
    for q in range(len(evidence)):
        for k in range(partition.r):
            if k != partition.assignment[q] and evaluate_transfer(partition, evidence, q, k).favorable:
                return False
    return True
