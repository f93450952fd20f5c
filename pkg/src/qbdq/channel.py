"""Decoy-photon eavesdropping check for quantum transmissions.

Decoys are single qubits drawn uniformly from {|0>, |1>, |+>, |->}, kept as
(basis, bit) records. Measuring a record in its own basis reproduces the bit;
measuring in the other basis gives a uniform bit.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, replace
from typing import Literal

import numpy as np

DEFAULT_THRESHOLD = 0.05
DEFAULT_MAX_RESTARTS = 3

Eavesdropper = Literal["none", "intercept_resend"]
EAVESDROPPERS = ("none", "intercept_resend")
BASES = ("Z", "X")


@dataclass(frozen=True)
class DecoyPhoton:
    basis: str
    bit: int
    position: int

    @property
    def ket(self) -> str:
        return {("Z", 0): "|0>", ("Z", 1): "|1>", ("X", 0): "|+>", ("X", 1): "|->"}[self.basis, self.bit]


@dataclass(frozen=True)
class ChannelReport:
    decoys_sent: int
    mismatches: int
    error_rate: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


class ChannelAbort(RuntimeError):
    """The decoy check kept failing after every allowed restart."""

    def __init__(self, reports: Sequence[ChannelReport]):
        self.reports = list(reports)
        worst = max(r.error_rate for r in self.reports)
        super().__init__(
            f"decoy check failed on {len(self.reports)} attempts (worst error rate {worst:.3f})"
        )


def default_decoy_count(payload_length: int) -> int:
    return max(1, math.ceil(payload_length / 4))


def _measure(bases: np.ndarray, bits: np.ndarray, in_basis: np.ndarray, rng) -> np.ndarray:
    random_bits = rng.integers(0, 2, size=len(bits))
    return np.where(bases == in_basis, bits, random_bits)


def _unpack(decoys: Sequence[DecoyPhoton]):
    bases = np.fromiter((BASES.index(d.basis) for d in decoys), dtype=np.int8, count=len(decoys))
    bits = np.fromiter((d.bit for d in decoys), dtype=np.int8, count=len(decoys))
    return bases, bits


def insert_decoys(
    payload_length: int, decoy_count: int, rng_seed: int
) -> tuple[list[int], list[DecoyPhoton]]:
    """Choose decoy slots among payload_length + decoy_count and draw their states."""
    if decoy_count < 1:
        raise ValueError("decoy_count must be >= 1")
    if payload_length < 0:
        raise ValueError("payload_length must be >= 0")
    rng = np.random.default_rng(rng_seed)
    total = payload_length + decoy_count
    positions = np.sort(rng.choice(total, size=decoy_count, replace=False))
    bases = rng.integers(0, 2, size=decoy_count)
    bits = rng.integers(0, 2, size=decoy_count)
    decoys = [
        DecoyPhoton(BASES[b], int(x), int(pos)) for b, x, pos in zip(bases, bits, positions)
    ]
    return [int(pos) for pos in positions], decoys


def transmit(
    decoys: Sequence[DecoyPhoton],
    eavesdropper: Eavesdropper = "none",
    rng_seed: int = 0,
    eve_bases: Sequence[str] | None = None,
) -> list[DecoyPhoton]:
    """Send decoys through the channel, optionally via an intercept-resend attacker.

    ``eve_bases`` pins the attacker's measurement basis per decoy instead of
    drawing it at random.
    """
    if eavesdropper == "none":
        return list(decoys)
    if eavesdropper != "intercept_resend":
        raise ValueError(f"unknown eavesdropper {eavesdropper!r}")
    rng = np.random.default_rng(rng_seed)
    bases, bits = _unpack(decoys)
    if eve_bases is None:
        eve = rng.integers(0, 2, size=len(decoys)).astype(np.int8)
    else:
        if len(eve_bases) != len(decoys):
            raise ValueError("eve_bases must match the number of decoys")
        eve = np.array([BASES.index(b) for b in eve_bases], dtype=np.int8)
    seen = _measure(bases, bits, eve, rng)
    return [replace(d, basis=BASES[e], bit=int(s)) for d, e, s in zip(decoys, eve, seen)]


def check_decoys(
    sent: Sequence[DecoyPhoton],
    received: Sequence[DecoyPhoton],
    threshold: float = DEFAULT_THRESHOLD,
    rng_seed: int = 0,
) -> ChannelReport:
    """Receiver measures each decoy in the announced basis; the sender counts mismatches."""
    if len(sent) != len(received):
        raise ValueError(f"sent {len(sent)} decoys but received {len(received)}")
    if not sent:
        raise ValueError("no decoys to check")
    rng = np.random.default_rng(rng_seed)
    sent_bases, sent_bits = _unpack(sent)
    recv_bases, recv_bits = _unpack(received)
    observed = _measure(recv_bases, recv_bits, sent_bases, rng)
    mismatches = int(np.count_nonzero(observed != sent_bits))
    rate = mismatches / len(sent)
    return ChannelReport(len(sent), mismatches, rate, threshold, rate <= threshold)


def check_transmission(
    payload_length: int,
    decoy_count: int | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    eavesdropper: Eavesdropper = "none",
    rng_seed: int = 0,
) -> ChannelReport:
    """One insert/transmit/check pass with sub-seeds derived from ``rng_seed``."""
    if decoy_count is None:
        decoy_count = default_decoy_count(payload_length)
    s_insert, s_channel, s_check = np.random.SeedSequence(rng_seed).generate_state(3)
    _, decoys = insert_decoys(payload_length, decoy_count, int(s_insert))
    received = transmit(decoys, eavesdropper, int(s_channel))
    return check_decoys(decoys, received, threshold, int(s_check))
