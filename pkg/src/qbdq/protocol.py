"""Five-step query session between the server and one client.

1. server loads its keys into a uniform index superposition and ships it;
2. client measures the index register, learns (lambda, K_lambda) and returns
   the offset delta_s = (lambda - p) mod N;
3. server rotates its keys by delta_s, encrypts every item with the rotated
   key and ships the encrypted-item superposition;
4. client runs the Grover iteration marking index p;
5. client measures, and on hitting (p, D_p ^ K_lambda) decrypts with K_lambda.

Handing the whole superposition over is what makes the transfer oblivious;
there is no separate classical OT exchange. Clients never interact, so two
clients are simply two sessions over the same read-only Database.
"""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .channel import (
    DEFAULT_MAX_RESTARTS,
    DEFAULT_THRESHOLD,
    ChannelAbort,
    ChannelReport,
    Eavesdropper,
    check_transmission,
)
from .grover import GroverScan, Retrieval, grover_retrieve, grover_scan
from .oracles import oracle_d, oracle_k
from .statevec import RegisterShape, StateError, StateVector, measure_subregister, prepare_uniform_index


def compute_m(db_items: Sequence[int], keys: Sequence[int]) -> int:
    """Data-register width: ceil(log2(max value + 1)) over items and keys, at least 1."""
    values = list(db_items) + list(keys)
    if not db_items or not keys:
        raise ValueError("items and keys must both be non-empty")
    if min(values) < 0:
        raise ValueError("items and keys must be non-negative")
    return max(1, max(values).bit_length())


@dataclass(frozen=True)
class Database:
    items: tuple[int, ...]
    keys: tuple[int, ...]
    shape: RegisterShape

    @classmethod
    def from_lists(cls, items: Sequence[int], keys: Sequence[int], m: int | None = None) -> Database:
        items = tuple(int(v) for v in items)
        keys = tuple(int(v) for v in keys)
        if len(items) != len(keys):
            raise ValueError(f"{len(items)} items but {len(keys)} keys")
        needed = compute_m(items, keys)
        if m is None:
            m = needed
        elif m < needed:
            raise ValueError(f"m={m} cannot hold values needing {needed} bits")
        return cls(items, keys, RegisterShape.for_items(len(items), m))

    @property
    def N(self) -> int:
        return self.shape.N


@dataclass(frozen=True)
class OffsetMessage:
    delta_s: int


def offset_for(lam: int, p: int, N: int) -> OffsetMessage:
    return OffsetMessage((lam - p) % N)


@dataclass
class ProtocolTranscript:
    client_id: str
    p: int
    lambda_: int
    key_lambda: int
    delta_s: int
    rotated_keys: list[int]
    encrypted: list[int]
    grover: dict
    r_used: int
    measured: tuple[int, int]
    decrypted: int | None
    rng_seed: int

    @property
    def success(self) -> bool:
        return self.decrypted is not None

    def to_dict(self) -> dict:
        return {
            "client_id": self.client_id,
            "p": self.p,
            "lambda": self.lambda_,
            "key_lambda": self.key_lambda,
            "delta_s": self.delta_s,
            "rotated_keys": list(self.rotated_keys),
            "encrypted": list(self.encrypted),
            "grover": self.grover,
            "r_used": self.r_used,
            "measured": list(self.measured),
            "decrypted": self.decrypted,
            "rng_seed": self.rng_seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def client_view(self) -> dict:
        """What the client itself holds after the session."""
        return {
            "p": self.p,
            "lambda": self.lambda_,
            "key_lambda": self.key_lambda,
            "delta_s": self.delta_s,
            "measured": list(self.measured),
            "decrypted": self.decrypted,
        }


@dataclass
class RetrievalResult:
    decrypted: int | None
    retrieval: Retrieval
    scan: GroverScan


@dataclass
class ChannelConfig:
    decoy_count: int | None = None
    threshold: float = DEFAULT_THRESHOLD
    eavesdropper: Eavesdropper = "none"
    max_restarts: int = DEFAULT_MAX_RESTARTS


def step1_key_state(db: Database) -> StateVector:
    return oracle_k(prepare_uniform_index(db.shape), db.keys)


def step2_measure_offset(
    key_state: StateVector,
    p: int,
    rng_seed: int = 0,
    force_lambda: int | None = None,
) -> tuple[int, int, OffsetMessage]:
    """Measure the index register, read the collapsed key, and form the offset.

    ``force_lambda`` replaces the sampled index but the collapse still happens.
    """
    N = key_state.shape.N
    if not 0 <= p < N:
        raise StateError(f"query index {p} outside [0, {N})")
    if force_lambda is not None and not 0 <= force_lambda < N:
        raise StateError(f"forced lambda {force_lambda} outside [0, {N})")
    rng = np.random.default_rng(rng_seed)
    index = measure_subregister(key_state, "index", rng, force=force_lambda)
    data = measure_subregister(index.post_state, "data", rng)
    lam = index.observed
    return lam, data.observed, offset_for(lam, p, N)


def rotate_keys(keys: Sequence[int], delta_s: int) -> list[int]:
    N = len(keys)
    return [keys[(i + delta_s) % N] for i in range(N)]


def step3_rotate_encrypt(
    db: Database, offset: OffsetMessage
) -> tuple[list[int], list[int], StateVector]:
    rotated = rotate_keys(db.keys, offset.delta_s)
    encrypted = [d ^ k for d, k in zip(db.items, rotated)]
    data_state = oracle_d(prepare_uniform_index(db.shape), encrypted)
    return rotated, encrypted, data_state


def step45_retrieve_decrypt(
    data_state: StateVector,
    p: int,
    key_lambda: int,
    expected_cipher: int,
    r: int | Literal["auto"] = "auto",
    rng_seed: int = 0,
    force_success: bool = False,
) -> RetrievalResult:
    """Grover-amplify index p, measure, and decrypt on a hit.

    A miss is a normal outcome: ``decrypted`` is None and the stray
    measurement is kept on ``retrieval``.
    """
    scan = grover_scan(data_state, p, expected_cipher)
    r_used = scan.r_star if r == "auto" else int(r)
    force = (p, expected_cipher) if force_success else None
    retrieval = grover_retrieve(data_state, p, expected_cipher, r_used, rng_seed, force=force)
    decrypted = expected_cipher ^ key_lambda if retrieval.success else None
    return RetrievalResult(decrypted, retrieval, scan)


def run_session(
    db: Database,
    p: int,
    rng_seed: int = 0,
    *,
    client_id: str = "alice",
    force_lambda: int | None = None,
    iterations: int | Literal["auto"] = "auto",
    force_success: bool = False,
) -> ProtocolTranscript:
    if not 0 <= p < db.N:
        raise StateError(f"query index {p} outside [0, {db.N})")
    seed_measure, seed_retrieve = (
        int(s) for s in np.random.SeedSequence(rng_seed).generate_state(2)
    )
    key_state = step1_key_state(db)
    lam, key_lambda, offset = step2_measure_offset(key_state, p, seed_measure, force_lambda)
    rotated, encrypted, data_state = step3_rotate_encrypt(db, offset)
    result = step45_retrieve_decrypt(
        data_state, p, key_lambda, encrypted[p], iterations, seed_retrieve, force_success
    )
    return ProtocolTranscript(
        client_id=client_id,
        p=p,
        lambda_=lam,
        key_lambda=key_lambda,
        delta_s=offset.delta_s,
        rotated_keys=rotated,
        encrypted=encrypted,
        grover=result.scan.summary(),
        r_used=result.retrieval.r,
        measured=result.retrieval.measured,
        decrypted=result.decrypted,
        rng_seed=rng_seed,
    )


def attempt_seed(rng_seed: int, attempt: int) -> int:
    if attempt == 0:
        return rng_seed
    return int(np.random.SeedSequence([rng_seed, attempt]).generate_state(1)[0])


@dataclass
class CheckedSession:
    transcript: ProtocolTranscript
    reports: list[ChannelReport] = field(default_factory=list)
    attempts: int = 1


def run_checked_session(
    db: Database,
    p: int,
    rng_seed: int = 0,
    channel: ChannelConfig | None = None,
    **session_options,
) -> CheckedSession:
    """Run a session with a decoy check on both quantum transmissions.

    A failed check cancels the attempt and restarts with a fresh derived seed,
    up to ``channel.max_restarts`` times; then ChannelAbort is raised.
    """
    channel = channel or ChannelConfig()
    reports: list[ChannelReport] = []
    for attempt in range(channel.max_restarts + 1):
        seed = attempt_seed(rng_seed, attempt)
        check_seeds = np.random.SeedSequence([seed, 0xDEC0]).generate_state(2)
        ok = True
        for s in check_seeds:
            report = check_transmission(
                db.shape.qubits, channel.decoy_count, channel.threshold, channel.eavesdropper, int(s)
            )
            reports.append(report)
            if not report.passed:
                ok = False
                break
        if ok:
            transcript = run_session(db, p, seed, **session_options)
            return CheckedSession(transcript, reports, attempt + 1)
    raise ChannelAbort(reports)
