import math

import numpy as np
import pytest

from qbdq.channel import (
    DecoyPhoton,
    check_decoys,
    check_transmission,
    default_decoy_count,
    insert_decoys,
    transmit,
)


def test_all_slots_are_decoys():
    positions, decoys = insert_decoys(0, 4, 1)
    assert positions == [0, 1, 2, 3]
    assert [d.position for d in decoys] == positions


def test_positions_distinct_and_in_range():
    positions, _ = insert_decoys(100, 30, 5)
    assert len(set(positions)) == 30
    assert all(0 <= p < 130 for p in positions)


def test_state_frequencies():
    _, decoys = insert_decoys(0, 100_000, 42)
    counts = {}
    for d in decoys:
        counts[d.ket] = counts.get(d.ket, 0) + 1
    assert set(counts) == {"|0>", "|1>", "|+>", "|->"}
    for c in counts.values():
        assert abs(c / 100_000 - 0.25) < 0.01


def test_insert_deterministic():
    assert insert_decoys(10, 5, 9) == insert_decoys(10, 5, 9)
    with pytest.raises(ValueError):
        insert_decoys(10, 0, 9)


def test_no_eavesdropper_passes_through():
    _, decoys = insert_decoys(8, 20, 3)
    assert transmit(decoys, "none", 1) == decoys
    rep = check_decoys(decoys, decoys, 0.05, 0)
    assert rep.error_rate == 0 and rep.passed


def test_matched_basis_preserved():
    _, decoys = insert_decoys(0, 200, 3)
    out = transmit(decoys, "intercept_resend", 4, eve_bases=[d.basis for d in decoys])
    assert out == decoys


def test_intercept_resend_rate():
    k = 100_000
    _, decoys = insert_decoys(0, k, 11)
    rep = check_decoys(decoys, transmit(decoys, "intercept_resend", 12), 0.05, 13)
    assert abs(rep.error_rate - 0.25) < 0.01
    assert abs(rep.error_rate - 0.25) < 3 * math.sqrt(0.25 * 0.75 / k)
    assert not rep.passed


def test_all_flipped_in_matching_basis():
    _, decoys = insert_decoys(0, 50, 2)
    flipped = [DecoyPhoton(d.basis, 1 - d.bit, d.position) for d in decoys]
    rep = check_decoys(decoys, flipped, 0.05, 0)
    assert rep.error_rate == 1.0 and not rep.passed


def test_check_length_mismatch():
    _, decoys = insert_decoys(0, 5, 2)
    with pytest.raises(ValueError):
        check_decoys(decoys, decoys[:4])


def test_detection_at_ten_thousand():
    rep = check_transmission(8, 10_000, 0.05, "intercept_resend", 77)
    assert not rep.passed


def test_unknown_eavesdropper():
    with pytest.raises(ValueError):
        transmit([], "beam-splitter")


def test_default_decoy_count():
    assert default_decoy_count(8) == 2
    assert default_decoy_count(9) == 3
    assert default_decoy_count(0) == 1


def test_attack_that_touches_x_basis_is_visible():
    # an attacker measuring only in Z disturbs X-basis decoys
    _, decoys = insert_decoys(0, 20_000, 1)
    out = transmit(decoys, "intercept_resend", 2, eve_bases=["Z"] * len(decoys))
    rep = check_decoys(decoys, out, 0.05, 3)
    assert abs(rep.error_rate - 0.25) < 0.02
