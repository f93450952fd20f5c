"""Modified Grover iteration: G = H O_p H O_s, bounded iteration and scans."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import kernels
from .oracles import oracle_p, oracle_s
from .statevec import (
    MeasurementOutcome,
    RegisterShape,
    StateError,
    StateVector,
    hadamard_all,
    measure_subregister,
)


@dataclass
class GroverScan:
    p: int
    target_data: int
    r_max: int
    p_target: np.ndarray
    p_index: np.ndarray
    r_star: int = field(init=False)

    def __post_init__(self):
        # argmax returns the first maximum, so ties go to the smaller r
        self.r_star = int(np.argmax(self.p_target))

    @property
    def per_iteration(self) -> list[tuple[int, float, float]]:
        return [(r, float(t), float(i)) for r, (t, i) in enumerate(zip(self.p_target, self.p_index))]

    def summary(self) -> dict:
        return {
            "r_max": self.r_max,
            "r_star": self.r_star,
            "p_target": float(self.p_target[self.r_star]),
            "p_index": float(self.p_index[self.r_star]),
        }


@dataclass
class Retrieval:
    outcome: MeasurementOutcome
    r: int
    p: int
    target_data: int

    @property
    def measured(self) -> tuple[int, int]:
        return self.outcome.pair

    @property
    def success(self) -> bool:
        return self.measured == (self.p, self.target_data)


def _check_query(state: StateVector, p: int, target_data: int | None = None):
    shape = state.shape
    if not 0 <= p < (1 << shape.n):
        raise StateError(f"query index {p} outside [0, {1 << shape.n})")
    if target_data is not None and not 0 <= target_data < shape.block:
        raise StateError(f"target data {target_data} outside [0, {shape.block})")


def g_operator(state: StateVector, p: int) -> StateVector:
    """One G application, spelled out as the four component transforms."""
    return hadamard_all(oracle_p(hadamard_all(oracle_s(state, p))))


def iterate(state: StateVector, p: int, r: int) -> StateVector:
    """Apply G ``r`` times using the fused kernel."""
    _check_query(state, p)
    out = state.copy()
    kernels.grover_iterate(out.amplitudes, p, state.shape.m, int(r))
    return out


def max_iterations(shape: RegisterShape | int) -> int:
    """ceil(pi/4 * sqrt(2**(n+m))); accepts a shape or the qubit count n+m."""
    qubits = shape.qubits if isinstance(shape, RegisterShape) else int(shape)
    return math.ceil(math.pi / 4 * math.sqrt(2**qubits))


def grover_scan(state: StateVector, p: int, target_data: int, r_max: int | None = None) -> GroverScan:
    _check_query(state, p, target_data)
    if r_max is None:
        r_max = max_iterations(state.shape)
    amps = state.amplitudes.copy()
    p_target = np.empty(r_max + 1)
    p_index = np.empty(r_max + 1)
    kernels.grover_scan(amps, p, target_data, state.shape.m, r_max, p_target, p_index)
    return GroverScan(p, target_data, r_max, p_target, p_index)


def grover_retrieve(
    state: StateVector,
    p: int,
    target_data: int,
    r: int | Literal["auto"] = "auto",
    rng_seed: int | np.random.Generator = 0,
    force: tuple[int, int] | None = None,
) -> Retrieval:
    """Iterate then measure the full register.

    ``r="auto"`` uses the scan's r_star. ``force`` replays a chosen (index, data)
    outcome, which must be reachable.
    """
    _check_query(state, p, target_data)
    if r == "auto":
        r = grover_scan(state, p, target_data).r_star
    evolved = iterate(state, p, r)
    forced = None if force is None else state.shape.basis(*force)
    outcome = measure_subregister(evolved, "all", rng_seed, force=forced)
    return Retrieval(outcome, int(r), p, target_data)
