"""The four oracle transforms, applied matrix-free to a StateVector.

``oracle_k`` and ``oracle_d`` are the XOR embedding |i>|x> -> |i>|x ^ v_i>,
which reduces to loading v_i into a zeroed data register. ``oracle_s`` negates
the index block of the query address and ``oracle_p`` keeps the sign of
|0...0> while negating every other amplitude.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from . import kernels
from .statevec import StateError, StateVector


def _check_values(values: Sequence[int], state: StateVector, what: str) -> np.ndarray:
    shape = state.shape
    vals = np.asarray(values, dtype=np.int64)
    if vals.ndim != 1 or len(vals) != shape.N:
        raise StateError(f"{what}: expected {shape.N} values, got {len(vals)}")
    if len(vals) and (vals.min() < 0 or vals.max() >= shape.block):
        raise StateError(f"{what}: values must lie in [0, {shape.block})")
    rows = state.amplitudes.reshape(-1, shape.block)
    if np.any(np.abs(rows[shape.N:]) > 0):
        raise StateError(f"{what}: state has support on index values >= N={shape.N}")
    table = np.zeros(1 << shape.n, dtype=np.int64)
    table[: shape.N] = vals
    return table


def _xor_embed(state, values, what):
    table = _check_values(values, state, what)
    out = state.copy()
    kernels.xor_data(out.amplitudes, table, state.shape.m)
    return out


def oracle_k(state: StateVector, keys: Sequence[int]) -> StateVector:
    """Load the key sequence into the data register."""
    return _xor_embed(state, keys, "keys")


def oracle_d(state: StateVector, enc: Sequence[int]) -> StateVector:
    """Load the encrypted items into the data register."""
    return _xor_embed(state, enc, "encrypted items")


def oracle_s(state: StateVector, p: int) -> StateVector:
    if not 0 <= p < (1 << state.shape.n):
        raise StateError(f"query index {p} outside [0, {1 << state.shape.n})")
    out = state.copy()
    kernels.flip_index(out.amplitudes, p, state.shape.m)
    return out


def oracle_p(state: StateVector) -> StateVector:
    out = state.copy()
    kernels.phase_all_but_zero(out.amplitudes)
    return out
