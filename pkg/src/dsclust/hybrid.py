"""Neural relaxation warm-starting the iterative optimizer, and the
uniform entry point for all three solvers."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .evidence import SimpleEvidence
from .exceptions import UnknownMethod
from .iterative import MoveTrace, optimize
from .metaconflict import Partition, metaconflict
from .neural import (NetworkParams, build_network, decode, init_state, is_crisp_valid,
                     run_to_convergence)

METHODS = ("neural", "iterative", "hybrid")


@dataclass
class RunReport:
    method: str
    seed: Optional[int]
    problem: dict
    final_mcf: float
    final_partition: dict
    neural_iterations: int = 0
    iterative_moves: int = 0
    mcf_trace: list = field(default_factory=list)
    wall_time: Optional[float] = None
    converged: dict = field(default_factory=dict)
    crispness: Optional[float] = None
    neural_mcf: Optional[float] = None
    moves: list = field(default_factory=list)
    conflicts: list = field(default_factory=list)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "method": self.method,
            "seed": self.seed,
            "problem": self.problem,
            "final_mcf": self.final_mcf,
            "final_partition": self.final_partition,
            "conflicts": self.conflicts,
            "neural_iterations": self.neural_iterations,
            "iterative_moves": self.iterative_moves,
            "neural_mcf": self.neural_mcf,
            "crispness": self.crispness,
            "converged": self.converged,
            "moves": self.moves,
            "mcf_trace": [list(p) for p in self.mcf_trace],
            "wall_time": self.wall_time if timing else None,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunReport":
        doc = dict(doc)
        doc["mcf_trace"] = [tuple(p) for p in doc.get("mcf_trace", [])]
        return cls(**doc)


def _finish(method, seed, problem, evidence, partition: Partition, t0, **kw) -> RunReport:
    return RunReport(method=method, seed=seed, problem=problem,
                     final_mcf=metaconflict(partition), final_partition=partition.to_dict(),
                     conflicts=list(partition.conflicts),
                     wall_time=time.perf_counter() - t0, **kw)


def _neural_phase(evidence, r, params, rng, trace):
    matrix, params = build_network(evidence, r, params)
    state = init_state(len(evidence), r, params, rng)
    records = []

    def record(s):
        assignment, _ = decode(s)
        records.append(("neural", s.t, metaconflict(Partition.from_assignment(evidence, assignment, r))))

    state, iterations, converged = run_to_convergence(state, matrix, params,
                                                      record if trace else None)
    assignment, crispness = decode(state)
    partition = Partition.from_assignment(evidence, assignment, r)
    return partition, iterations, converged, crispness, is_crisp_valid(state), records


def _iterative_records(moves: MoveTrace, offset: int) -> list:
    return [("iterative", offset + s.iteration, s.mcf_after) for s in moves.steps]


def run_neural(evidence: Sequence[SimpleEvidence], r: int, params: NetworkParams | None = None,
               rng: np.random.Generator | None = None, seed: Optional[int] = None,
               problem: dict | None = None, trace: bool = True) -> RunReport:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed) if rng is None else rng
    part, its, conv, crisp, valid, records = _neural_phase(evidence, r, params, rng, trace)
    return _finish("neural", seed, problem or {}, evidence, part, t0,
                   neural_iterations=its, mcf_trace=records, crispness=crisp,
                   neural_mcf=metaconflict(part),
                   converged={"neural": conv, "crisp_valid": valid})


def run_iterative(evidence: Sequence[SimpleEvidence], r: int,
                  rng: np.random.Generator | None = None, seed: Optional[int] = None,
                  problem: dict | None = None, start: Sequence[int] | None = None,
                  max_moves: int | None = None) -> RunReport:
    """Cold-start hill climbing from a uniform-random assignment.

    ``start`` overrides the random initial assignment.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed) if rng is None else rng
    if start is None:
        start = rng.integers(0, r, size=len(evidence)).tolist()
    part, moves = optimize(Partition.from_assignment(evidence, start, r), evidence, max_moves)
    records = [("iterative", 0, moves.initial_mcf)] + _iterative_records(moves, 0)
    return _finish("iterative", seed, problem or {}, evidence, part, t0,
                   iterative_moves=moves.n_moves, mcf_trace=records,
                   moves=[s.to_dict() for s in moves.steps],
                   converged={"iterative": not moves.budget_exhausted})


def run_hybrid(evidence: Sequence[SimpleEvidence], r: int, params: NetworkParams | None = None,
               rng: np.random.Generator | None = None, seed: Optional[int] = None,
               problem: dict | None = None, trace: bool = True,
               max_moves: int | None = None) -> RunReport:
    """Relax the network to convergence, decode by argmax, then hill-climb.

    Non-crisp decodes are handed over as they are.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed) if rng is None else rng
    start, its, conv, crisp, valid, records = _neural_phase(evidence, r, params, rng, trace)
    part, moves = optimize(start, evidence, max_moves)
    records = records + _iterative_records(moves, its)
    return _finish("hybrid", seed, problem or {}, evidence, part, t0,
                   neural_iterations=its, iterative_moves=moves.n_moves, mcf_trace=records,
                   crispness=crisp, neural_mcf=metaconflict(start),
                   moves=[s.to_dict() for s in moves.steps],
                   converged={"neural": conv, "crisp_valid": valid,
                              "iterative": not moves.budget_exhausted})


def run_single(method: str, evidence: Sequence[SimpleEvidence], r: int,
               params: NetworkParams | None = None, rng: np.random.Generator | None = None,
               seed: Optional[int] = None, problem: dict | None = None,
               trace: bool = True) -> RunReport:
    if method == "neural":
        return run_neural(evidence, r, params, rng, seed, problem, trace)
    if method == "iterative":
        return run_iterative(evidence, r, rng, seed, problem)
    if method == "hybrid":
        return run_hybrid(evidence, r, params, rng, seed, problem, trace)
    raise UnknownMethod(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
