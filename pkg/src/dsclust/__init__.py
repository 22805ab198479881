"""Clustering of Dempster-Shafer evidence by metaconflict minimization.

Three solvers are provided: best-improvement transfer hill climbing
(:mod:`dsclust.iterative`), a Hopfield-style relaxation network
(:mod:`dsclust.neural`) and the hybrid that warm-starts the former with the
latter (:mod:`dsclust.hybrid`).
"""
from .bench import ProblemSpec, gen_exhaustive, gen_random, run_experiment
from .evidence import (SimpleEvidence, brute_force_conflict, combine_conflict, make_evidence,
                       pairwise_conflict, weight_of_conflict)
from .hybrid import RunReport, run_hybrid, run_single
from .iterative import best_move, optimize
from .metaconflict import (Partition, brute_force_min_mcf, evaluate_transfer, log_sum_objective,
                           metaconflict)
from .neural import NetworkParams

__version__ = "0.1.0"
