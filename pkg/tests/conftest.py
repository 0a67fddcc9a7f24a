import os

import numpy as np
import pytest

from cliffdet import Metric

# lines recorded by the acceptance suite, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail}")


def metrics_for(d: int) -> list[Metric]:
    """Euclidean, Minkowski and one-zero-entry metrics of dimension ``d``."""
    if d == 0:
        return [Metric(())]
    return [Metric.euclidean(d), Metric.minkowski(d), Metric.degenerate(d)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def stretch_enabled() -> bool:
    return os.environ.get("CLIFF_STRETCH") == "1"
