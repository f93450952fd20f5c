"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it imports; otherwise the numpy
versions in ``_pykernels`` take over. Setting ``QBDQ_PURE_PYTHON=1`` forces the
fallback.
"""
import importlib
import os

from . import _pykernels

BACKENDS = ("cython", "python")


def load_backend(name):
    """Return the kernel module for ``name`` ("cython" or "python")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("qbdq._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    found = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


if os.environ.get("QBDQ_PURE_PYTHON"):
    impl, BACKEND = _pykernels, "python"
else:
    try:
        impl, BACKEND = load_backend("cython"), "cython"
    except ImportError:
        impl, BACKEND = _pykernels, "python"

fwht = impl.fwht
xor_data = impl.xor_data
flip_index = impl.flip_index
phase_all_but_zero = impl.phase_all_but_zero
grover_iterate = impl.grover_iterate
grover_scan = impl.grover_scan
