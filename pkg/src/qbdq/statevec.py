"""Dense state vectors over an index register and a data register.

Basis integers are laid out as ``b = i * 2**m + x``: the n index qubits are the
high-order block and the m data qubits the low-order block.

Sampling uses numpy's ``default_rng`` (PCG64) seeded with the caller's integer,
drawing one uniform variate per measurement and inverting the cumulative
distribution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import kernels

NORM_TOL = 1e-10
DEGENERATE_NORM = 1e-6
# Outcomes below this probability are never sampled.
UNREACHABLE_PROB = 1e-12


class StateError(ValueError):
    """Raised for malformed shapes, out-of-range addresses or degenerate states."""


def index_qubits(N: int) -> int:
    """Smallest n with 2**n >= N."""
    if N < 1:
        raise StateError(f"database size must be >= 1, got {N}")
    return (N - 1).bit_length()


@dataclass(frozen=True)
class RegisterShape:
    n: int
    m: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise StateError(f"N must be >= 1, got {self.N}")
        if self.m < 1:
            raise StateError(f"m must be >= 1, got {self.m}")
        if self.n != index_qubits(self.N):
            raise StateError(f"n={self.n} does not match ceil(log2 {self.N})")

    @classmethod
    def for_items(cls, N: int, m: int) -> RegisterShape:
        return cls(n=index_qubits(N), m=m, N=N)

    @property
    def qubits(self) -> int:
        return self.n + self.m

    @property
    def dim(self) -> int:
        return 1 << (self.n + self.m)

    @property
    def block(self) -> int:
        """Number of data values per index value."""
        return 1 << self.m

    def basis(self, i: int, x: int) -> int:
        if not 0 <= i < (1 << self.n):
            raise StateError(f"index value {i} outside [0, {1 << self.n})")
        if not 0 <= x < self.block:
            raise StateError(f"data value {x} outside [0, {self.block})")
        return i * self.block + x

    def split(self, b: int) -> tuple[int, int]:
        return divmod(b, self.block)


@dataclass
class StateVector:
    shape: RegisterShape
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.shape.dim,):
            raise StateError(
                f"expected {self.shape.dim} amplitudes, got shape {amps.shape}"
            )
        self.amplitudes = amps

    @classmethod
    def basis_state(cls, shape: RegisterShape, i: int, x: int) -> StateVector:
        amps = np.zeros(shape.dim, dtype=np.complex128)
        amps[shape.basis(i, x)] = 1.0
        return cls(shape, amps)

    def copy(self) -> StateVector:
        return StateVector(self.shape, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def index_probabilities(self) -> np.ndarray:
        """Marginal distribution of the index register, length 2**n."""
        return self.probabilities().reshape(-1, self.shape.block).sum(axis=1)

    def support(self, tol: float = UNREACHABLE_PROB) -> list[tuple[int, int]]:
        """(index, data) pairs whose probability exceeds ``tol``."""
        return [self.shape.split(int(b)) for b in np.flatnonzero(self.probabilities() > tol)]


@dataclass
class MeasurementOutcome:
    observed: int
    post_state: StateVector
    which: str = "all"
    probability: float = 1.0

    @property
    def pair(self) -> tuple[int, int]:
        """(index, data) of the collapsed state; only meaningful when fully collapsed."""
        if self.which == "all":
            return self.post_state.shape.split(self.observed)
        b = int(np.argmax(self.post_state.probabilities()))
        return self.post_state.shape.split(b)


def prepare_uniform_index(shape: RegisterShape) -> StateVector:
    """Equal superposition of the first N index values with a zeroed data register."""
    amps = np.zeros(shape.dim, dtype=np.complex128)
    amps[: shape.N * shape.block : shape.block] = 1.0 / math.sqrt(shape.N)
    return StateVector(shape, amps)


def hadamard_all(state: StateVector) -> StateVector:
    out = state.copy()
    kernels.fwht(out.amplitudes)
    return out


def probability_of(state: StateVector, i: int, x: int) -> float:
    return float(abs(state.amplitudes[state.shape.basis(i, x)]) ** 2)


def _sample(probs: np.ndarray, rng: np.random.Generator) -> int:
    probs = np.where(probs < UNREACHABLE_PROB, 0.0, probs)
    cdf = np.cumsum(probs)
    u = rng.random() * cdf[-1]
    k = int(np.searchsorted(cdf, u, side="right"))
    # u == cdf[-1] is impossible for u in [0, 1) but guard float edge cases.
    k = min(k, len(probs) - 1)
    while probs[k] == 0.0:
        k -= 1
    return k


def measure_subregister(
    state: StateVector,
    which: Literal["index", "data", "all"] = "all",
    rng_seed: int | np.random.Generator = 0,
    force: int | None = None,
) -> MeasurementOutcome:
    """Projective measurement of one sub-register (or the whole register).

    ``force`` replays a chosen outcome instead of sampling it; the state still
    collapses and the outcome must have non-negligible probability.
    """
    norm = state.norm()
    if norm < DEGENERATE_NORM:
        raise StateError(f"cannot measure a degenerate state (norm {norm:.3g})")
    shape = state.shape
    probs = state.probabilities() / norm**2
    grid = probs.reshape(-1, shape.block)
    if which == "index":
        marginal = grid.sum(axis=1)
    elif which == "data":
        marginal = grid.sum(axis=0)
    elif which == "all":
        marginal = probs
    else:
        raise StateError(f"unknown sub-register {which!r}")

    if force is None:
        rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
        outcome = _sample(marginal, rng)
    else:
        if not 0 <= force < len(marginal):
            raise StateError(f"forced outcome {force} outside [0, {len(marginal)})")
        if marginal[force] < UNREACHABLE_PROB:
            raise StateError(f"forced outcome {force} has zero probability")
        outcome = int(force)

    post = np.zeros_like(state.amplitudes)
    view = post.reshape(-1, shape.block)
    src = state.amplitudes.reshape(-1, shape.block)
    if which == "index":
        view[outcome] = src[outcome]
    elif which == "data":
        view[:, outcome] = src[:, outcome]
    else:
        post[outcome] = state.amplitudes[outcome]
    p = float(marginal[outcome])
    post /= math.sqrt(p) * norm
    return MeasurementOutcome(outcome, StateVector(shape, post), which, p)
