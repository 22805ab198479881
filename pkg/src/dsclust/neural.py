"""Hopfield-style relaxation network for evidence clustering.

Rows of the neuron grid are pieces of evidence, columns are clusters.
Neurons in the same column inhibit each other in proportion to the weight of
conflict between their evidence; neurons in the same row inhibit each other
uniformly so that each evidence settles in one cluster.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .evidence import SimpleEvidence, pairwise_conflict
from .exceptions import ConflictAtOne

CRISP_THRESHOLD = 0.9
PARAMS_RESOURCE = "network_params.json"


@dataclass(frozen=True)
class NetworkParams:
    eta: float = 0.1
    u0: float = 0.02
    dt: float = 1.0
    gi: float = -0.1
    ri: float = -1.0
    eb: float = 0.5
    noise_scale: float = 0.1
    conv_epsilon: float = 1e-4
    conv_window: int = 3
    max_iters: int = 1000

    def __post_init__(self):
        if self.u0 <= 0:
            raise ValueError("u0 must be positive")
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.gi > 0 or self.ri > 0:
            raise ValueError("inhibition terms gi and ri must be <= 0")
        if self.eb < 0:
            raise ValueError("excitation bias must be >= 0")
        if self.noise_scale < 0:
            raise ValueError("noise_scale must be >= 0")
        if self.conv_window < 1:
            raise ValueError("conv_window must be >= 1")
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "NetworkParams":
        names = {f.name for f in fields(cls)}
        unknown = set(doc) - names - {"version", "calibration"}
        if unknown:
            raise ValueError(f"unknown network parameter(s): {sorted(unknown)}")
        return cls(**{k: v for k, v in doc.items() if k in names})

    @classmethod
    def load(cls, path: str | Path) -> "NetworkParams":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def default(cls) -> "NetworkParams":
        """Calibrated defaults shipped with the package."""
        text = resources.files("dsclust.data").joinpath(PARAMS_RESOURCE).read_text()
        return cls.from_dict(json.loads(text))

    def with_(self, **changes) -> "NetworkParams":
        return replace(self, **changes)


@dataclass
class ConflictMatrix:
    n_evidence: int
    c: np.ndarray
    w: np.ndarray

    def column_weights(self, params: NetworkParams) -> np.ndarray:
        """Same-column coupling ``-dt * w + gi`` with the self term removed."""
        cw = -params.dt * self.w + params.gi
        np.fill_diagonal(cw, 0.0)
        return cw


@dataclass
class NetworkState:
    U: np.ndarray
    V: np.ndarray
    t: int = 0

    def copy(self) -> "NetworkState":
        return NetworkState(self.U.copy(), self.V.copy(), self.t)


def output_voltage(U: np.ndarray, u0: float) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(U / u0))


def conflict_matrix(evidence: Sequence[SimpleEvidence]) -> ConflictMatrix:
    n = len(evidence)
    c = np.zeros((n, n))
    for j in range(n):
        for k in range(j + 1, n):
            c[j, k] = c[k, j] = pairwise_conflict(evidence[j], evidence[k])
    if n and c.max() >= 1.0:
        raise ConflictAtOne("a pairwise conflict equals 1")
    return ConflictMatrix(n, c, -np.log1p(-c))


def build_network(evidence: Sequence[SimpleEvidence], r: int,
                  params: NetworkParams | None = None) -> tuple[ConflictMatrix, NetworkParams]:
    if r < 1:
        raise ValueError("need at least one cluster")
    params = NetworkParams.default() if params is None else params
    return conflict_matrix(evidence), params


def initial_input_voltage(r: int, u0: float) -> float:
    """Resting input voltage at which each neuron outputs ``1 / r``.

    With a single column the arc tangent diverges; the neuron is then started
    at ``4 * u0`` so it is already saturated on.
    """
    if r == 1:
        return 4.0 * u0
    return u0 * math.atanh(2.0 / r - 1.0)


def init_state(n_evidence: int, r: int, params: NetworkParams,
               rng: np.random.Generator) -> NetworkState:
    if r < 1:
        raise ValueError("need at least one cluster")
    u00 = initial_input_voltage(r, params.u0)
    spread = params.noise_scale * params.u0
    U = u00 + rng.uniform(-spread, spread, size=(n_evidence, r))
    return NetworkState(U, output_voltage(U, params.u0), 0)


def step(state: NetworkState, matrix: ConflictMatrix, params: NetworkParams,
         _col: np.ndarray | None = None) -> NetworkState:
    """One synchronous update of every neuron from the current voltages."""
    V = state.V
    col = matrix.column_weights(params) if _col is None else _col
    col_in = col @ V
    row_in = (params.ri + params.gi) * (V.sum(axis=1, keepdims=True) - V)
    U = state.U + params.eta * (col_in + row_in + params.eb - state.U)
    return NetworkState(U, output_voltage(U, params.u0), state.t + 1)


def decode(state: NetworkState, r: int | None = None) -> tuple[list[int], float]:
    """Argmax column per row, and the smallest row maximum as crispness."""
    V = state.V
    if V.shape[0] == 0:
        return [], 1.0
    return [int(k) for k in np.argmax(V, axis=1)], float(V.max(axis=1).min())


def is_crisp_valid(state: NetworkState, threshold: float = CRISP_THRESHOLD) -> bool:
    """Every row has exactly one neuron on and is crisp at ``threshold``."""
    V = state.V
    if V.shape[0] == 0:
        return True
    on = (V >= 0.5).sum(axis=1)
    return bool(np.all(on == 1) and V.max(axis=1).min() >= threshold)


def run_to_convergence(state: NetworkState, matrix: ConflictMatrix, params: NetworkParams,
                       callback=None) -> tuple[NetworkState, int, bool]:
    """Iterate until every ``|dV|`` stays below ``conv_epsilon`` for
    ``conv_window`` consecutive iterations, or ``max_iters`` is hit.

    ``callback(state)`` is invoked after every iteration.
    """
    col = matrix.column_weights(params)
    quiet = 0
    iterations = 0
    while iterations < params.max_iters:
        new = step(state, matrix, params, col)
        iterations += 1
        delta = float(np.abs(new.V - state.V).max()) if new.V.size else 0.0
        state = new
        if callback is not None:
            callback(state)
        quiet = quiet + 1 if delta < params.conv_epsilon else 0
        if quiet >= params.conv_window:
            return state, iterations, True
    return state, iterations, False


def surrogate_cost(assignment: Sequence[int], matrix: ConflictMatrix) -> float:
    """Sum of pairwise weights over co-clustered evidence pairs."""
    a = np.asarray(assignment)
    same = a[:, None] == a[None, :]
    return float(np.triu(matrix.w * same, 1).sum())
