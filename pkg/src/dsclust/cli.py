"""Command-line entry point: ``dsclust {gen,run,bench,trace}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bench import METHOD_STREAM, ProblemSpec, emit_report, run_experiment, run_log
from .evidence import load_evidence, save_evidence
from .exceptions import DSClustError, UsageError
from .hybrid import METHODS, run_single
from .neural import NetworkParams

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    method: str = "hybrid"
    clusters: Optional[int] = None
    family: str = "exhaustive"
    size: Optional[int] = None
    sizes: list[int] = field(default_factory=list)
    repeats: int = 10
    seed: int = 0
    params: Optional[str] = None
    input: Optional[str] = None
    out: Optional[str] = None
    format: str = "csv"
    trace: Optional[str] = None
    timing: bool = False
    jobs: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dsclust", description="Cluster Dempster-Shafer evidence by metaconflict.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate an evidence-set file")
    gen.add_argument("--family", choices=["exhaustive", "random"], default="exhaustive")
    gen.add_argument("--clusters", type=int, required=True,
                     help="number of clusters; also the frame size")
    gen.add_argument("--size", type=int, help="number of evidence (random family)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    for name, helptext in (("run", "cluster an evidence file with one method"),
                           ("trace", "write the per-iteration metaconflict series as CSV")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--method", choices=METHODS, default="hybrid")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--clusters", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--params")
        p.add_argument("--out")
        if name == "run":
            p.add_argument("--trace", help="also write the trace CSV here")
            p.add_argument("--timing", action="store_true", help="record wall time in the report")

    bench = sub.add_parser("bench", help="repeated experiments over the three methods")
    bench.add_argument("--family", choices=["exhaustive", "random"], default="exhaustive")
    bench.add_argument("--sizes", type=_int_list,
                       help="cluster counts (exhaustive) or evidence counts (random)")
    bench.add_argument("--clusters", type=int, help="cluster count for the random family")
    bench.add_argument("--size", type=int, help="single size instead of --sizes")
    bench.add_argument("--method", action="append", choices=METHODS,
                       help="restrict to a method; repeatable")
    bench.add_argument("--repeats", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--params")
    bench.add_argument("--out")
    bench.add_argument("--format", choices=["csv", "json"], default="csv")
    bench.add_argument("--timing", action="store_true")
    bench.add_argument("--jobs", type=int, default=1)
    return parser


def parse_args(argv: Sequence[str]) -> CliConfig:
    ns = _parser().parse_args(list(argv))
    cfg = CliConfig(command=ns.command)
    for key, value in vars(ns).items():
        if key != "command" and value is not None:
            setattr(cfg, key, value)
    if cfg.command == "bench":
        cfg.method = ",".join(ns.method) if ns.method else ",".join(METHODS)
        if not cfg.sizes:
            if cfg.size is None:
                raise UsageError("bench needs --sizes or --size")
            cfg.sizes = [cfg.size]
        if cfg.family == "random" and cfg.clusters is None:
            raise UsageError("--clusters is required for the random family")
        if cfg.repeats < 1:
            raise UsageError("--repeats must be at least 1")
        if cfg.jobs < 1:
            raise UsageError("--jobs must be at least 1")
    if cfg.command == "gen" and cfg.family == "random" and cfg.size is None:
        raise UsageError("--size is required for the random family")
    if cfg.clusters is not None and cfg.clusters < 1:
        raise UsageError("--clusters must be at least 1")
    return cfg


def _params(cfg: CliConfig) -> NetworkParams:
    return NetworkParams.load(cfg.params) if cfg.params else NetworkParams.default()


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def trace_csv(trace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["phase", "iteration", "mcf"])
    writer.writerows([list(row) for row in trace])
    return buf.getvalue()


def _spec(cfg: CliConfig, size: int) -> ProblemSpec:
    if cfg.family == "exhaustive":
        return ProblemSpec.exhaustive(size, cfg.seed)
    return ProblemSpec.random(cfg.clusters, size, seed=cfg.seed)


def _single(cfg: CliConfig):
    evidence, frame_size = load_evidence(cfg.input)
    rng = np.random.default_rng([cfg.seed, 0, METHOD_STREAM[cfg.method]])
    problem = {"input": Path(cfg.input).name, "frame_size": frame_size,
               "r": cfg.clusters, "M": len(evidence)}
    return run_single(cfg.method, evidence, cfg.clusters, _params(cfg), rng=rng,
                      seed=cfg.seed, problem=problem)


def execute(cfg: CliConfig) -> int:
    if cfg.command == "gen":
        spec = (ProblemSpec.exhaustive(cfg.clusters, cfg.seed) if cfg.family == "exhaustive"
                else ProblemSpec.random(cfg.clusters, cfg.size, seed=cfg.seed))
        save_evidence(cfg.out, spec.generate(0), spec.frame_size)
    elif cfg.command == "run":
        report = _single(cfg)
        _write(cfg.out, json.dumps(report.to_dict(cfg.timing), indent=1, sort_keys=True) + "\n")
        if cfg.trace:
            Path(cfg.trace).write_text(trace_csv(report.mcf_trace))
    elif cfg.command == "trace":
        _write(cfg.out, trace_csv(_single(cfg).mcf_trace))
    elif cfg.command == "bench":
        params = _params(cfg)
        reports = [run_experiment(_spec(cfg, size), cfg.method.split(","), cfg.repeats, params,
                                  jobs=cfg.jobs, timing=cfg.timing)
                   for size in cfg.sizes]
        _write(cfg.out, emit_report(reports, cfg.format))
        if cfg.out:
            Path(cfg.out + ".runs.jsonl").write_text(run_log(reports))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"dsclust: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return execute(cfg)
    except FileNotFoundError as exc:
        print(f"dsclust: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_RUNTIME
    except (DSClustError, OSError, ValueError, KeyError) as exc:
        print(f"dsclust: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
