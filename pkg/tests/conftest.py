import numpy as np
import pytest
from hypothesis import settings

from listwise import MissingnessMatrix

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(number, ok: bool | None, detail: str) -> bool | None:
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        _CRITERIA.append(f"criterion {number}: {status}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def small3x2():
    # missing cells (0,1) and (2,0)
    return MissingnessMatrix.from_missing_cells(3, 2, [(0, 1), (2, 0)])


def random_matrix(rng: np.random.Generator, n_rows: int, n_cols: int, p: float) -> MissingnessMatrix:
    return MissingnessMatrix.from_bool(rng.random((n_rows, n_cols)) < p)
