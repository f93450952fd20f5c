import math

import numpy as np
import pytest

from qbdq.analysis import (
    CSV_HEADER,
    KeyEnsemble,
    comparison_csv,
    cost_cbits,
    cost_measurements,
    cost_qubits,
    emit_comparison_tables,
    holevo_entropy,
    key_ensemble_report,
)

from conftest import KEYS


def dense_entropy(keys, n, m):
    """von Neumann entropy of the explicit (n+m)-qubit density matrix."""
    dim = 1 << (n + m)
    rho = np.zeros((dim, dim))
    for i, k in enumerate(keys):
        v = np.zeros(dim)
        v[(i << m) | k] = 1
        rho += np.outer(v, v) / len(keys)
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-15]
    return float(-(lam * np.log2(lam)).sum())


def test_entropy_small_cases():
    assert holevo_entropy(KeyEnsemble(((1.0, 0, 3),))) == 0.0
    assert holevo_entropy(KeyEnsemble(((0.5, 0, 1), (0.5, 1, 1)))) == pytest.approx(1.0)


def test_entropy_example_is_log_n():
    h = holevo_entropy(KeyEnsemble.from_keys(KEYS))
    assert h == 4.0
    assert h == pytest.approx(dense_entropy(KEYS, 4, 4), abs=1e-12)


def test_entropy_independent_of_keys():
    rng = np.random.default_rng(1)
    for N in (2, 3, 5, 8, 13):
        keys = [int(k) for k in rng.integers(0, 8, size=N)]
        assert holevo_entropy(KeyEnsemble.from_keys(keys)) == pytest.approx(math.log2(N), abs=1e-12)


def test_entropy_merges_repeated_labels():
    e = KeyEnsemble(((0.25, 0, 1), (0.25, 0, 1), (0.5, 1, 0)))
    assert holevo_entropy(e) == pytest.approx(1.0)


def test_entropy_bounded_by_uniform():
    rng = np.random.default_rng(2)
    for _ in range(20):
        w = rng.random(6)
        w /= w.sum()
        e = KeyEnsemble(tuple((float(p), i, 0) for i, p in enumerate(w)))
        assert 0 <= holevo_entropy(e) <= math.log2(6) + 1e-12


def test_ensemble_must_sum_to_one():
    with pytest.raises(ValueError):
        KeyEnsemble(((0.5, 0, 0), (0.4, 1, 0)))


def test_report_gap():
    rep = key_ensemble_report(KEYS, 4, 4)
    assert rep["gap_bits"] == 4.0
    assert rep["nonzero_eigenvalues"] == 16


@pytest.mark.parametrize(
    "N,expected",
    [(8, (24, 8, 3)), (200, (1600, 200, 8)), (400, (3600, 400, 9))],
)
def test_qubit_rows(N, expected):
    assert tuple(cost_qubits(s, N) for s in ("J11G12", "R13", "QBDQ")) == expected


def test_qubit_text_mode():
    assert cost_qubits("QBDQ", 8, 1, "text") == 8
    assert cost_qubits("J11G12", 16, 1, "text") == 32
    assert cost_qubits("R13", 16, 1, "text") == 16


def test_cbit_rows():
    assert (cost_cbits("R13", 8), cost_cbits("QBDQ", 8)) == (8, 3)
    assert (cost_cbits("J11G12", 160), cost_cbits("QBDQ", 160)) == (160, 8)
    assert cost_cbits("QBDQ", 2) == 1
    assert cost_cbits("R13", 64, mode="summary") == 65
    assert cost_cbits("QBDQ", 64, mode="summary") == 1


def test_measurements():
    assert cost_measurements("QBDQ", 1000) == 2
    assert cost_measurements("R13", 64) == 64
    assert cost_measurements("J11G12", 8) == 24


def test_bad_inputs():
    with pytest.raises(ValueError):
        cost_qubits("BB84", 8)
    with pytest.raises(ValueError):
        cost_qubits("QBDQ", 1)
    with pytest.raises(ValueError):
        cost_cbits("QBDQ", 8, mode="text-ish")


def test_qbdq_growth_is_logarithmic():
    for N in range(2, 5000, 7):
        assert cost_qubits("QBDQ", 2 * N) - cost_qubits("QBDQ", N) <= 1


def test_emit_order_and_csv():
    recs = emit_comparison_tables([16, 8])
    assert [(r.database_size, r.scheme) for r in recs] == [
        (8, "J11G12"), (8, "R13"), (8, "QBDQ"), (16, "J11G12"), (16, "R13"), (16, "QBDQ"),
    ]
    text = comparison_csv(emit_comparison_tables([8]))
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert text == "N,scheme,qubits,cbits,measurements\n8,J11G12,24,8,24\n8,R13,8,8,8\n8,QBDQ,3,3,2\n"
    assert "\r" not in text


def test_large_size():
    (qbdq,) = [r for r in emit_comparison_tables([1024]) if r.scheme == "QBDQ"]
    assert qbdq.transmitted_qubits == 10
