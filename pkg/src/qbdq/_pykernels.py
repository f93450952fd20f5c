"""Numpy implementations of the amplitude kernels.

Every function mutates a contiguous complex128 array in place. The layout is
``b = i * 2**m + x`` (index block high, data block low).
"""
import numpy as np


def fwht(amps):
    """Normalized Walsh-Hadamard transform, in place."""
    dim = amps.shape[0]
    h = 1
    while h < dim:
        view = amps.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] += hi
        view[:, 1, :] = lo - hi
        h *= 2
    amps *= dim ** -0.5


def xor_data(amps, table, m):
    """Map |i>|x> to |i>|x ^ table[i]> for every index block."""
    block = 1 << m
    view = amps.reshape(-1, block)
    xs = np.arange(block)
    # Row i gathers from x ^ t_i; XOR is an involution so gather == scatter.
    src = xs[None, :] ^ np.asarray(table, dtype=np.int64)[:, None]
    view[...] = np.take_along_axis(view, src, axis=1)


def flip_index(amps, p, m):
    block = 1 << m
    amps[p * block:(p + 1) * block] *= -1


def phase_all_but_zero(amps):
    amps[1:] *= -1


def grover_iterate(amps, p, m, r):
    for _ in range(r):
        flip_index(amps, p, m)
        fwht(amps)
        phase_all_but_zero(amps)
        fwht(amps)


def grover_scan(amps, p, target, m, r_max, out_target, out_index):
    """Record target/index probabilities for r = 0..r_max, leaving amps at r_max."""
    block = 1 << m
    lo = p * block
    for r in range(r_max + 1):
        if r:
            grover_iterate(amps, p, m, 1)
        seg = amps[lo:lo + block]
        out_index[r] = float(np.vdot(seg, seg).real)
        out_target[r] = abs(amps[lo + target]) ** 2
