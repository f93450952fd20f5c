import json
from pathlib import Path

import numpy as np
import pytest

from qbdq import RegisterShape, StateVector
from qbdq.cli import load_database
from qbdq.kernels import available_backends, load_backend

ITEMS = [5, 9, 6, 12, 2, 11, 11, 6, 5, 10, 7, 15, 6, 11, 6, 9]
KEYS = [14, 8, 3, 4, 7, 1, 11, 6, 15, 2, 12, 13, 0, 5, 9, 10]
ROTATED = [7, 1, 11, 6, 15, 2, 12, 13, 0, 5, 9, 10, 14, 8, 3, 4]
ENCRYPTED = [2, 8, 13, 10, 13, 9, 7, 11, 5, 15, 14, 5, 8, 3, 5, 13]

_ACCEPTANCE = []
REPORT_PATH = Path(__file__).resolve().parent.parent / "acceptance_report.json"


@pytest.fixture
def example_db():
    return load_database()


@pytest.fixture(params=available_backends())
def backend(request):
    return load_backend(request.param)


def random_state(shape: RegisterShape, rng) -> StateVector:
    z = rng.normal(size=shape.dim) + 1j * rng.normal(size=shape.dim)
    return StateVector(shape, z / np.linalg.norm(z))


@pytest.fixture
def record_criterion():
    def record(cid, description, ok, detail=""):
        _ACCEPTANCE.append(
            {"criterion": cid, "description": description, "passed": bool(ok), "detail": detail}
        )
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for rec in sorted(_ACCEPTANCE, key=lambda r: str(r["criterion"])):
        status = "PASS" if rec["passed"] else "FAIL"
        line = f"{status} [{rec['criterion']}] {rec['description']}"
        if rec["detail"]:
            line += f" -- {rec['detail']}"
        terminalreporter.write_line(line)
    REPORT_PATH.write_text(json.dumps(_ACCEPTANCE, indent=2) + "\n")
