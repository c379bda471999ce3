import numpy as np
import pytest

from luequiv.states import PureState, basis_state, ghz_state, w_state


@pytest.fixture
def ghz():
    return ghz_state()


@pytest.fixture
def w():
    return w_state()


@pytest.fixture
def zero3():
    return basis_state((2, 2, 2), (0, 0, 0))


def trace_out_last_by_summation(psi: PureState):
    """Tr_n |psi><psi| by an explicit sum over the last party's index."""
    d = psi.dims[-1]
    rest = psi.amplitudes.size // d
    out = np.zeros((rest, rest), dtype=complex)
    for k in range(d):
        col = np.array([psi.amplitudes[r * d + k] for r in range(rest)])
        out += np.outer(col, col.conj())
    return out


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
