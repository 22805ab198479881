import json

import numpy as np
import pytest

from dsclust.bench import ProblemSpec
from dsclust.exceptions import UnknownMethod
from dsclust.evidence import make_evidence
from dsclust.hybrid import RunReport, run_hybrid, run_iterative, run_neural, run_single
from dsclust.iterative import optimize
from dsclust.metaconflict import Partition, lowest_element_partition, metaconflict
from dsclust.neural import NetworkParams


@pytest.fixture(scope="module")
def params():
    return NetworkParams.default()


def test_zero_conflict_evidence(params):
    rng = np.random.default_rng(4)
    evs = [make_evidence(int(f) | 0b10, float(m), i)
           for i, (f, m) in enumerate(zip(rng.integers(1, 16, 10), rng.uniform(0.1, 0.9, 10)))]
    rep = run_hybrid(evs, 3, params, seed=1)
    assert rep.final_mcf == 0.0 and rep.iterative_moves == 0


def test_best_of_ten_on_three_cluster_family(params):
    evs = ProblemSpec.exhaustive(3).generate(0)
    assert min(run_hybrid(evs, 3, params, seed=s).final_mcf for s in range(10)) == 0.0


def test_report_invariants(params):
    evs = ProblemSpec.exhaustive(5).generate(2)
    rep = run_hybrid(evs, 5, params, seed=3)
    final = Partition.from_assignment(evs, rep.final_partition["assignment"], 5)
    assert rep.final_mcf == pytest.approx(metaconflict(final), abs=1e-12)
    assert rep.final_mcf <= rep.neural_mcf + 1e-12
    phases = [p for p, _, _ in rep.mcf_trace]
    assert phases == ["neural"] * rep.neural_iterations + ["iterative"] * rep.iterative_moves
    assert [i for _, i, _ in rep.mcf_trace] == list(range(1, len(rep.mcf_trace) + 1))
    tail = [rep.mcf_trace[rep.neural_iterations - 1][2]] + [m for p, _, m in rep.mcf_trace if p == "iterative"]
    assert all(b < a - 1e-12 for a, b in zip(tail, tail[1:]))


def test_hybrid_is_neural_then_iterative(params):
    evs = ProblemSpec.exhaustive(4).generate(1)
    hybrid = run_hybrid(evs, 4, params, rng=np.random.default_rng(11))
    neural = run_neural(evs, 4, params, rng=np.random.default_rng(11))
    start = Partition.from_assignment(evs, neural.final_partition["assignment"], 4)
    manual, moves = optimize(start, evs)
    assert hybrid.final_partition["assignment"] == manual.assignment
    assert hybrid.neural_iterations == neural.neural_iterations
    assert hybrid.iterative_moves == moves.n_moves
    assert hybrid.neural_mcf == neural.final_mcf


def test_neural_bookkeeping(params):
    evs = ProblemSpec.exhaustive(3).generate(0)
    rep = run_single("neural", evs, 3, params, seed=0)
    assert rep.neural_iterations >= 1 and rep.iterative_moves == 0
    assert len(rep.mcf_trace) == rep.neural_iterations


def test_iterative_from_optimal_start():
    evs = ProblemSpec.exhaustive(4).generate(0)
    start = lowest_element_partition(evs, 4).assignment
    rep = run_iterative(evs, 4, seed=0, start=start)
    assert rep.iterative_moves == 0 and rep.final_mcf == 0.0


def test_unknown_method(params):
    with pytest.raises(UnknownMethod):
        run_single("annealing", [], 2, params)


def test_trace_can_be_skipped(params):
    evs = ProblemSpec.exhaustive(3).generate(0)
    rep = run_hybrid(evs, 3, params, seed=0, trace=False)
    assert all(p == "iterative" for p, _, _ in rep.mcf_trace)


def test_report_reproducible_and_round_trips(params):
    evs = ProblemSpec.exhaustive(4).generate(3)
    a = run_hybrid(evs, 4, params, seed=5, problem={"family": "exhaustive"})
    b = run_hybrid(evs, 4, params, seed=5, problem={"family": "exhaustive"})
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["wall_time"] is None
    assert set(doc) >= {"method", "seed", "problem", "final_mcf", "final_partition",
                        "neural_iterations", "iterative_moves", "mcf_trace", "wall_time", "converged"}
    again = RunReport.from_dict(doc)
    assert again.to_json() == a.to_json()
    assert json.loads(a.to_json(timing=True))["wall_time"] > 0


def test_sixty_three_into_six_warm_start_needs_few_moves(params):
    evs = ProblemSpec.exhaustive(6).generate(0)
    hybrid = [run_hybrid(evs, 6, params, seed=s, trace=False).iterative_moves for s in range(3)]
    cold = [run_iterative(evs, 6, seed=s).iterative_moves for s in range(3)]
    assert np.mean(hybrid) < np.mean(cold)
