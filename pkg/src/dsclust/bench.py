"""Problem generators and repeated, seeded experiments over the three solvers."""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .evidence import SimpleEvidence, make_evidence, theta_mask
from .exceptions import BadSize, DSClustError, UnknownFormat, UnknownMethod
from .hybrid import METHODS, RunReport, run_single
from .metaconflict import lowest_element_partition, metaconflict
from .neural import NetworkParams

MASS_LOW, MASS_HIGH = 0.01, 0.99
CSV_HEADER = ["family", "r", "M", "method", "metric", "value", "repeats", "seed"]
ZERO_TOL = 1e-12

# Neural and hybrid share a stream so the hybrid's neural phase replays the
# neural run of the same repeat exactly.
METHOD_STREAM = {"neural": 1, "hybrid": 1, "iterative": 2}

DEFINITIONS = {
    "conflict_per_cluster": "mean over runs of sum_i c_i / r",
    "conflict_per_evidence": "mean over runs of sum_i c_i / M",
    "delta_iterations": "moves made by the iterative phase of the hybrid",
    "zero_runs": f"runs with final metaconflict <= {ZERO_TOL}",
}


def _masses(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(MASS_LOW, MASS_HIGH, size=n)


def gen_exhaustive(r: int, rng: np.random.Generator) -> list[SimpleEvidence]:
    """One evidence per nonempty subset of ``{1..r}``, ascending by bitmask."""
    if not 2 <= r <= 8:
        raise BadSize(f"exhaustive family needs 2 <= r <= 8, got {r}")
    masses = _masses(rng, 2 ** r - 1)
    return [make_evidence(mask, masses[mask - 1], mask - 1) for mask in range(1, 2 ** r)]


def gen_random(frame_size: int, M: int, rng: np.random.Generator) -> list[SimpleEvidence]:
    """``M`` evidence with focal sets uniform over the nonempty subsets."""
    if frame_size < 2 or M < 1:
        raise BadSize(f"random family needs frame_size >= 2 and M >= 1, got {frame_size}, {M}")
    full = theta_mask(frame_size)
    focals = rng.integers(1, full + 1, size=M)
    masses = _masses(rng, M)
    return [make_evidence(int(f), m, i) for i, (f, m) in enumerate(zip(focals, masses))]


@dataclass(frozen=True)
class ProblemSpec:
    family: str
    n_clusters: int
    n_evidence: int
    frame_size: int
    seed: int = 0

    @classmethod
    def exhaustive(cls, r: int, seed: int = 0) -> "ProblemSpec":
        return cls("exhaustive", r, 2 ** r - 1, r, seed)

    @classmethod
    def random(cls, r: int, M: int, frame_size: Optional[int] = None, seed: int = 0) -> "ProblemSpec":
        return cls("random", r, M, r if frame_size is None else frame_size, seed)

    def __post_init__(self):
        if self.family not in ("exhaustive", "random"):
            raise BadSize(f"unknown family {self.family!r}")
        if self.family == "exhaustive" and (self.n_evidence != 2 ** self.n_clusters - 1
                                            or self.frame_size != self.n_clusters):
            raise BadSize("exhaustive family requires M = 2^r - 1 and frame size r")

    def instance_rng(self, repeat: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, repeat])

    def method_rng(self, repeat: int, method: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, repeat, METHOD_STREAM[method]])

    def generate(self, repeat: int = 0) -> list[SimpleEvidence]:
        rng = self.instance_rng(repeat)
        if self.family == "exhaustive":
            return gen_exhaustive(self.n_clusters, rng)
        return gen_random(self.frame_size, self.n_evidence, rng)

    def descriptor(self, repeat: int) -> dict:
        return {**asdict(self), "repeat": repeat}


def zero_certificate(evidence: Sequence[SimpleEvidence], r: int) -> float:
    """Metaconflict of the lowest-element partition (0 when frame size <= r)."""
    return metaconflict(lowest_element_partition(evidence, r))


@dataclass
class ExperimentReport:
    spec: ProblemSpec
    methods: list[str]
    repeats: int
    aggregates: dict = field(default_factory=dict)
    runs: list[RunReport] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    timing: bool = False
    definitions: dict = field(default_factory=lambda: dict(DEFINITIONS))

    def to_dict(self) -> dict:
        return {"spec": asdict(self.spec), "methods": list(self.methods), "repeats": self.repeats,
                "timing": self.timing, "definitions": self.definitions,
                "aggregates": self.aggregates, "failures": self.failures,
                "runs": [run.to_dict(timing=self.timing) for run in self.runs]}

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentReport":
        return cls(spec=ProblemSpec(**doc["spec"]), methods=list(doc["methods"]),
                   repeats=doc["repeats"], aggregates=doc["aggregates"],
                   runs=[RunReport.from_dict(r) for r in doc["runs"]],
                   failures=doc["failures"], timing=doc["timing"],
                   definitions=doc["definitions"])

    def runs_for(self, method: str) -> list[RunReport]:
        return [r for r in self.runs if r.method == method]


def _mean(xs: Sequence[float]) -> float:
    return math.fsum(xs) / len(xs)


def _sd(xs: Sequence[float]) -> float:
    return statistics.pstdev(xs) if len(xs) > 1 else 0.0


def aggregate(runs: Sequence[RunReport], r: int, M: int, timing: bool = False) -> dict:
    """Summary statistics of one method's runs; exact functions of the run data."""
    mcfs = [run.final_mcf for run in runs]
    out = {
        "runs": len(runs),
        "best_mcf": min(mcfs),
        "mean_mcf": _mean(mcfs),
        "zero_runs": sum(m <= ZERO_TOL for m in mcfs),
        "mean_conflict_per_cluster": _mean([math.fsum(run.conflicts) / r for run in runs]),
        "mean_conflict_per_evidence": _mean([math.fsum(run.conflicts) / M for run in runs]),
    }
    method = runs[0].method
    if method in ("neural", "hybrid"):
        its = [run.neural_iterations for run in runs]
        out["mean_neural_iterations"] = _mean(its)
        out["sd_neural_iterations"] = _sd(its)
        out["crisp_rate"] = _mean([float(run.converged.get("crisp_valid", False)) for run in runs])
    if method in ("iterative", "hybrid"):
        moves = [run.iterative_moves for run in runs]
        out["mean_iterative_moves"] = _mean(moves)
        out["sd_iterative_moves"] = _sd(moves)
    if method == "hybrid":
        out["mean_delta_iterations"] = out["mean_iterative_moves"]
        out["mean_neural_mcf"] = _mean([run.neural_mcf for run in runs])
    if timing:
        out["mean_wall_time"] = _mean([run.wall_time for run in runs])
    return out


def _run_cell(spec: ProblemSpec, repeat: int, method: str, params: NetworkParams,
              trace: bool) -> tuple[int, str, RunReport | None, str | None]:
    try:
        evidence = spec.generate(repeat)
        report = run_single(method, evidence, spec.n_clusters, params,
                            rng=spec.method_rng(repeat, method), seed=spec.seed,
                            problem=spec.descriptor(repeat), trace=trace)
        return repeat, method, report, None
    except (DSClustError, ArithmeticError, ValueError) as exc:
        return repeat, method, None, f"{type(exc).__name__}: {exc}"


def run_experiment(spec: ProblemSpec, methods: Iterable[str] = METHODS, repeats: int = 10,
                   params: NetworkParams | None = None, jobs: int = 1, timing: bool = False,
                   trace: bool = False) -> ExperimentReport:
    """Run every method on the same freshly generated instance per repeat."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    methods = [m for m in METHODS if m in set(methods)] if methods else []
    for m in methods:
        if m not in METHODS:
            raise UnknownMethod(m)
    params = NetworkParams.default() if params is None else params
    cells = [(spec, rep, m, params, trace) for rep in range(repeats) for m in methods]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, *zip(*cells)))
    else:
        results = [_run_cell(*cell) for cell in cells]
    order = {m: i for i, m in enumerate(METHODS)}
    results.sort(key=lambda res: (res[0], order[res[1]]))

    report = ExperimentReport(spec, methods, repeats, timing=timing)
    for rep, method, run, err in results:
        if run is None:
            report.failures.append({"repeat": rep, "method": method, "error": err})
            continue
        if not timing:
            run.wall_time = None
        report.runs.append(run)
    for m in methods:
        runs = report.runs_for(m)
        if runs:
            report.aggregates[m] = aggregate(runs, spec.n_clusters, spec.n_evidence, timing)
    return report


def csv_rows(report: ExperimentReport) -> list[list]:
    s = report.spec
    rows = []
    for method in report.methods:
        for metric, value in report.aggregates.get(method, {}).items():
            rows.append([s.family, s.n_clusters, s.n_evidence, method, metric, value,
                         report.repeats, s.seed])
    return rows


def emit_report(reports: ExperimentReport | Sequence[ExperimentReport], format: str = "csv") -> str:
    """Render one or several experiment reports as CSV or JSON text."""
    if isinstance(reports, ExperimentReport):
        reports = [reports]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for report in reports:
            writer.writerows(csv_rows(report))
        return buf.getvalue()
    if format == "json":
        docs = [report.to_dict() for report in reports]
        return json.dumps(docs[0] if len(docs) == 1 else docs, indent=1, sort_keys=True) + "\n"
    raise UnknownFormat(f"unknown report format {format!r}; expected csv or json")


def parse_report(text: str) -> ExperimentReport | list[ExperimentReport]:
    doc = json.loads(text)
    if isinstance(doc, list):
        return [ExperimentReport.from_dict(d) for d in doc]
    return ExperimentReport.from_dict(doc)


def run_log(reports: Sequence[ExperimentReport]) -> str:
    """Raw log: one RunReport JSON document per line."""
    lines = [run.to_json(timing=rep.timing) for rep in reports for run in rep.runs]
    return "".join(line + "\n" for line in lines)
