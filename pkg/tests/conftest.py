import numpy as np
import pytest

from asemi import make_context


@pytest.fixture
def pair():
    """The 3x3 weighted-shift example with its weight diag(1, 1, 2)."""
    T = np.array([[0, 0, 0], [2, 0, 0], [0, 1, 0]], dtype=complex)
    A = np.diag([1.0, 1.0, 2.0])
    return make_context(A), T


def random_hermitian(rng, n):
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (Z + Z.conj().T) / 2


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# -- acceptance bookkeeping: one PASS/FAIL line per criterion ------------------

_CRITERIA: dict[str, list] = {}


class _Criterion:
    def __init__(self, label):
        self.label = label
        self.notes = []

    def note(self, text):
        self.notes.append(str(text))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = getattr(item, "_criterion", None)
    if crit is None or rep.when != "call":
        return
    _CRITERIA[crit.label] = ["PASS" if rep.passed else "FAIL", crit.notes]


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    crit = _Criterion(marker.args[0] if marker else request.node.name)
    request.node._criterion = crit
    return crit


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split(":")[0]) if s.split(":")[0].isdigit() else 99):
        status, notes = _CRITERIA[label]
        detail = f"  ({'; '.join(notes)})" if notes else ""
        terminalreporter.write_line(f"[{status}] criterion {label}{detail}")
