import numpy as np
import pytest

from pdmwell.models import HarmonicPdmWell, SechPdmWell


def sign_changes(values, rel_floor=1e-9):
    """Sign changes of a sampled function, ignoring samples near zero."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > rel_floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v))))


def log_x_grid(a, n=2000, y_lo=1e-6, y_hi=1e6):
    """Points in (-a, inf), log-spaced in the distance to the wall."""
    return np.geomspace(y_lo, y_hi, n) - a


@pytest.fixture
def sech_paper():
    return SechPdmWell(1.0, 48.0)


@pytest.fixture
def harmonic_a3():
    return HarmonicPdmWell(1.0, 3.0)


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one acceptance line (shown in the terminal summary) and assert it."""

    def _record(label, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
