# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude kernels; same contracts as ``qbdq._pykernels``."""
from libc.math cimport sqrt


cdef void _fwht(double complex[::1] a) noexcept nogil:
    cdef Py_ssize_t dim = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double complex u, v
    cdef double scale
    while h < dim:
        i = 0
        while i < dim:
            for j in range(i, i + h):
                u = a[j]
                v = a[j + h]
                a[j] = u + v
                a[j + h] = u - v
            i += 2 * h
        h *= 2
    scale = 1.0 / sqrt(<double>dim)
    for i in range(dim):
        a[i] = a[i] * scale


cdef void _flip(double complex[::1] a, Py_ssize_t p, int m) noexcept nogil:
    cdef Py_ssize_t block = (<Py_ssize_t>1) << m
    cdef Py_ssize_t j
    for j in range(p * block, (p + 1) * block):
        a[j] = -a[j]


cdef void _phase(double complex[::1] a) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(1, a.shape[0]):
        a[j] = -a[j]


def fwht(double complex[::1] amps):
    with nogil:
        _fwht(amps)


def xor_data(double complex[::1] amps, table, int m):
    cdef Py_ssize_t block = (<Py_ssize_t>1) << m
    cdef Py_ssize_t nblocks = amps.shape[0] // block
    cdef Py_ssize_t i, x, y, base
    cdef Py_ssize_t t
    cdef double complex tmp
    cdef long long[::1] tab = _as_int64(table)
    for i in range(nblocks):
        t = tab[i]
        if t == 0:
            continue
        base = i * block
        for x in range(block):
            y = x ^ t
            if x < y:
                tmp = amps[base + x]
                amps[base + x] = amps[base + y]
                amps[base + y] = tmp


def flip_index(double complex[::1] amps, Py_ssize_t p, int m):
    _flip(amps, p, m)


def phase_all_but_zero(double complex[::1] amps):
    _phase(amps)


def grover_iterate(double complex[::1] amps, Py_ssize_t p, int m, int r):
    cdef int k
    with nogil:
        for k in range(r):
            _flip(amps, p, m)
            _fwht(amps)
            _phase(amps)
            _fwht(amps)


def grover_scan(double complex[::1] amps, Py_ssize_t p, Py_ssize_t target, int m,
                int r_max, double[::1] out_target, double[::1] out_index):
    cdef Py_ssize_t block = (<Py_ssize_t>1) << m
    cdef Py_ssize_t lo = p * block
    cdef Py_ssize_t j
    cdef int r
    cdef double acc
    cdef double complex z
    with nogil:
        for r in range(r_max + 1):
            if r:
                _flip(amps, p, m)
                _fwht(amps)
                _phase(amps)
                _fwht(amps)
            acc = 0.0
            for j in range(lo, lo + block):
                z = amps[j]
                acc += z.real * z.real + z.imag * z.imag
            out_index[r] = acc
            z = amps[lo + target]
            out_target[r] = z.real * z.real + z.imag * z.imag


def _as_int64(table):
    import numpy as np
    return np.ascontiguousarray(table, dtype=np.int64)
