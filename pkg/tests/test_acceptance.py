"""Exit criteria. Each test records one PASS/FAIL line, shown in the pytest
terminal summary under "acceptance criteria"."""
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_evidence
from dsclust.bench import ProblemSpec, gen_random, run_experiment
from dsclust.cli import main
from dsclust.evidence import brute_force_conflict, combine_conflict
from dsclust.hybrid import run_hybrid, run_iterative
from dsclust.iterative import is_local_minimum
from dsclust.metaconflict import Partition, brute_force_min_mcf, lowest_element_partition, metaconflict
from dsclust.neural import NetworkParams


def verdict(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def params():
    return NetworkParams.default()


@pytest.fixture(scope="module")
def paired(params):
    """Ten paired seeds at r = 4 and r = 5 over all three methods."""
    t0 = time.perf_counter()
    reports = {r: run_experiment(ProblemSpec.exhaustive(r, seed=0), repeats=10, params=params)
               for r in (4, 5)}
    return reports, time.perf_counter() - t0


def test_1_oracle_equivalence():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        evs = random_evidence(rng, int(rng.integers(0, 11)), int(rng.integers(2, 7)))
        worst = max(worst, abs(combine_conflict(evs) - brute_force_conflict(evs)))
    elapsed = time.perf_counter() - t0
    verdict(1, "combine_conflict == brute force on 200 lists", worst <= 1e-12 and elapsed < 5,
            f"max |diff| = {worst:.2e} (tol 1e-12), {elapsed:.2f}s (limit 5s)")


def test_2_zero_minimum_certificates():
    values = {}
    for r in range(3, 7):
        evs = ProblemSpec.exhaustive(r).generate(0)
        values[f"exhaustive r={r}"] = metaconflict(lowest_element_partition(evs, r))
    for M in (50, 60, 70):
        evs = gen_random(6, M, np.random.default_rng(M))
        values[f"random M={M}"] = metaconflict(lowest_element_partition(evs, 6))
    verdict(2, "lowest-element partition has Mcf exactly 0", all(v == 0.0 for v in values.values()),
            ", ".join(f"{k}: {v}" for k, v in values.items()))


def test_3_brute_force_agreement(params):
    t0 = time.perf_counter()
    evs = ProblemSpec.exhaustive(3).generate(0)
    _, brute = brute_force_min_mcf(evs, 3)
    iterative = min(run_iterative(evs, 3, seed=s).final_mcf for s in range(10))
    hybrid = min(run_hybrid(evs, 3, params, seed=s).final_mcf for s in range(10))
    elapsed = time.perf_counter() - t0
    verdict(3, "r=3 brute force, iterative and hybrid best-of-10 all reach 0",
            brute == 0.0 and iterative == 0.0 and hybrid == 0.0 and elapsed < 60,
            f"brute {brute}, iterative {iterative}, hybrid {hybrid}, {elapsed:.2f}s (limit 60s)")


def test_4_method_ordering(paired):
    reports, elapsed = paired
    ok, parts = elapsed < 600, []
    for r, rep in reports.items():
        n, i, h = (rep.aggregates[m]["mean_mcf"] for m in ("neural", "iterative", "hybrid"))
        ok &= h <= i + 0.01
        if n > 0.02:
            ok &= h < n
        parts.append(f"r={r}: neural {n:.4f}, iterative {i:.4f}, hybrid {h:.4f}")
    verdict(4, "mean Mcf hybrid <= iterative + 0.01 and hybrid < neural",
            ok, "; ".join(parts) + f"; {elapsed:.1f}s (limit 600s)")


def test_5_warm_start_effect(paired):
    reports, _ = paired
    ok, parts = True, []
    for r, rep in reports.items():
        hybrid = rep.aggregates["hybrid"]["mean_iterative_moves"]
        cold = rep.aggregates["iterative"]["mean_iterative_moves"]
        ok &= hybrid < cold
        parts.append(f"r={r}: hybrid {hybrid:.1f} vs cold {cold:.1f} moves")
    verdict(5, "hybrid needs fewer iterative moves than a cold start", ok, "; ".join(parts))


def test_6_hill_climb_soundness(paired):
    reports, _ = paired
    extra = run_experiment(ProblemSpec.exhaustive(3), ["iterative", "hybrid"], repeats=10)
    checked, bad = 0, []
    for rep in [*reports.values(), extra]:
        evs_by_repeat = {k: rep.spec.generate(k) for k in range(rep.repeats)}
        for run in rep.runs:
            if run.method == "neural":
                continue
            mcfs = [m for phase, _, m in run.mcf_trace if phase == "iterative"]
            if run.method == "hybrid":
                mcfs = [run.neural_mcf] + mcfs
            decreasing = all(b < a - 1e-12 for a, b in zip(mcfs, mcfs[1:]))
            evs = evs_by_repeat[run.problem["repeat"]]
            final = Partition.from_assignment(evs, run.final_partition["assignment"],
                                              run.final_partition["r"])
            local = run.converged["iterative"] and is_local_minimum(final, evs)
            checked += 1
            if not (decreasing and local):
                bad.append((rep.spec.n_clusters, run.method, run.problem["repeat"]))
    verdict(6, "traces strictly decrease and end at a verified local minimum", not bad,
            f"{checked} runs checked, violations: {bad or 'none'}")


def test_7_neural_behavior_class(params):
    rep = run_experiment(ProblemSpec.exhaustive(3, seed=0), ["neural", "hybrid"], repeats=50,
                         params=params)
    neural, hybrid = rep.runs_for("neural"), rep.runs_for("hybrid")
    crisp = np.mean([run.converged["neural"] and run.crispness >= 0.9 for run in neural])
    repaired = all(h.final_mcf <= n.final_mcf + 1e-12 for n, h in zip(neural, hybrid))
    paired = all(h.neural_mcf == n.final_mcf for n, h in zip(neural, hybrid))
    rises = sum(any(b > a for a, b in zip(t, t[1:]))
                for t in ([m for _, _, m in run.mcf_trace] for run in neural))
    verdict(7, ">= 80% crisp neural decodes at r=3; hybrid never worse than its neural decode",
            crisp >= 0.8 and repaired and paired,
            f"crisp rate {crisp:.2f} (min 0.80), hybrid <= neural on all 50 pairs: {repaired}, "
            f"neural traces with an uphill step: {rises}/50 (permitted)")


def test_8_cli_determinism(tmp_path):
    def invoke(workdir):
        workdir.mkdir()
        p = str(workdir / "p.json")
        codes = [
            main(["gen", "--family", "random", "--clusters", "4", "--size", "20", "--seed", "7", "--out", p]),
            main(["run", "--method", "hybrid", "--in", p, "--clusters", "4", "--seed", "7",
                  "--out", str(workdir / "run.json"), "--trace", str(workdir / "run_trace.csv")]),
            main(["trace", "--in", p, "--clusters", "4", "--seed", "7", "--out", str(workdir / "trace.csv")]),
            main(["bench", "--sizes", "3,4", "--repeats", "3", "--seed", "7",
                  "--out", str(workdir / "bench.csv")]),
            main(["bench", "--sizes", "3", "--repeats", "2", "--seed", "7", "--format", "json",
                  "--jobs", "2", "--out", str(workdir / "bench.json")]),
        ]
        return codes, {f.name: f.read_bytes() for f in sorted(workdir.iterdir())}

    codes_a, files_a = invoke(tmp_path / "a")
    codes_b, files_b = invoke(tmp_path / "b")
    same = files_a.keys() == files_b.keys() and all(files_a[k] == files_b[k] for k in files_a)
    verdict(8, "repeated CLI invocations give byte-identical outputs",
            codes_a == codes_b == [0] * 5 and same,
            f"{len(files_a)} files compared ({', '.join(files_a)}), identical: {same}")
