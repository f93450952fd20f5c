"""Entropy of the key ensemble and communication-cost comparison tables.

Cost formulas come in modes because the tabulated values and the closed-form
expressions do not agree:

``table``
    reproduces the tabulated numbers: qubits J11G12 = N*ceil(log2 N),
    R13 = N, QBDQ = ceil(log2 N); cbits N for the others and ceil(log2 N)
    for QBDQ.
``text``
    the closed forms: J11G12 = ceil(N*log2 sqrt N), QBDQ = 2*(ceil(log2 N) + m).
``summary`` (cbits only)
    the asymptotic summary row: N + 1 for the others, 1 for QBDQ.
"""
from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

SCHEMES = ("J11G12", "R13", "QBDQ")
QUBIT_MODES = ("table", "text")
CBIT_MODES = ("table", "text", "summary")
CSV_HEADER = ("N", "scheme", "qubits", "cbits", "measurements")


def ceil_log2(N: int) -> int:
    return (N - 1).bit_length()


@dataclass(frozen=True)
class KeyEnsemble:
    entries: tuple[tuple[float, int, int], ...]

    def __post_init__(self):
        total = math.fsum(prob for prob, _, _ in self.entries)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"ensemble probabilities sum to {total}, not 1")
        if any(prob < 0 for prob, _, _ in self.entries):
            raise ValueError("negative probability in ensemble")

    @classmethod
    def from_keys(cls, keys: Sequence[int]) -> KeyEnsemble:
        N = len(keys)
        return cls(tuple((1.0 / N, i, int(k)) for i, k in enumerate(keys)))


def holevo_entropy(ensemble: KeyEnsemble) -> float:
    """Holevo quantity in bits for an ensemble of computational-basis pure states.

    Each member is pure, so the bound is the von Neumann entropy of the
    mixture. The mixture is diagonal in the (index, key) basis; its
    eigenvalues are the probabilities accumulated per distinct label.
    """
    eig: dict[tuple[int, int], float] = {}
    for prob, i, k in ensemble.entries:
        eig[i, k] = eig.get((i, k), 0.0) + prob
    h = -math.fsum(lam * math.log2(lam) for lam in eig.values() if lam > 0)
    return h + 0.0  # normalize -0.0


def key_ensemble_report(keys: Sequence[int], n: int, m: int) -> dict:
    """Entropy of the transmitted key state next to the register capacity n + m.

    The mixture has at most N nonzero eigenvalues, so the entropy never
    exceeds log2 N = n; the gap to n + m is the data-register width.
    """
    entropy = holevo_entropy(KeyEnsemble.from_keys(keys))
    capacity = n + m
    return {
        "entropy_bits": entropy,
        "register_capacity_bits": capacity,
        "gap_bits": capacity - entropy,
        "nonzero_eigenvalues": len({(i, k) for i, k in enumerate(keys)}),
    }


def _check(scheme: str, N: int, mode: str, modes: Sequence[str]):
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if mode not in modes:
        raise ValueError(f"unknown formula mode {mode!r}; expected one of {modes}")
    if N < 2:
        raise ValueError(f"database size must be >= 2, got {N}")


def cost_qubits(scheme: str, N: int, m: int = 1, mode: str = "table") -> int:
    _check(scheme, N, mode, QUBIT_MODES)
    if scheme == "R13":
        return N
    if mode == "table":
        return N * ceil_log2(N) if scheme == "J11G12" else ceil_log2(N)
    if scheme == "J11G12":
        # N * log2(sqrt N) = N * log2(N) / 2; round up to whole qubits
        return math.ceil(N * math.log2(N) / 2 - 1e-9)
    return 2 * (ceil_log2(N) + m)


def cost_cbits(scheme: str, N: int, m: int = 1, mode: str = "table") -> int:
    _check(scheme, N, mode, CBIT_MODES)
    if mode == "summary":
        return 1 if scheme == "QBDQ" else N + 1
    if scheme != "QBDQ":
        return N if mode == "table" else N * m
    return ceil_log2(N) if mode == "table" else ceil_log2(N) * m


def cost_measurements(scheme: str, N: int) -> int:
    _check(scheme, N, "table", ("table",))
    if scheme == "J11G12":
        return ceil_log2(N) * N
    if scheme == "R13":
        return N
    return 2


@dataclass(frozen=True)
class EfficiencyRecord:
    scheme: str
    database_size: int
    transmitted_qubits: int
    exchanged_cbits: int
    measurements: int

    def row(self) -> tuple:
        return (
            self.database_size,
            self.scheme,
            self.transmitted_qubits,
            self.exchanged_cbits,
            self.measurements,
        )


def emit_comparison_tables(
    n_values: Iterable[int], mode: str = "table", m: int = 1
) -> list[EfficiencyRecord]:
    """One record per (N, scheme), ascending N then scheme order."""
    return [
        EfficiencyRecord(
            scheme,
            N,
            cost_qubits(scheme, N, m, mode),
            cost_cbits(scheme, N, m, mode),
            cost_measurements(scheme, N),
        )
        for N in sorted(n_values)
        for scheme in SCHEMES
    ]


def comparison_csv(records: Iterable[EfficiencyRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()
