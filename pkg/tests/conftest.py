import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

_RESULTS: dict[int, tuple[str, bool, str]] = {}


class _Recorder:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.checks: list[tuple[str, float, float]] = []

    def check(self, label: str, measured: float, tol: float) -> None:
        self.checks.append((label, float(measured), float(tol)))

    @property
    def ok(self) -> bool:
        return all(m <= t for _, m, t in self.checks)

    def summary(self) -> str:
        return "; ".join(f"{label} {m:.3g} <= {t:.3g}" if m <= t else f"{label} {m:.3g} > {t:.3g}"
                         for label, m, t in self.checks)

    def verdict(self) -> None:
        _RESULTS[self.number] = (self.title, self.ok, self.summary())
        assert self.ok, self.summary()


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    rec = _Recorder(number, title)
    yield rec
    if number not in _RESULTS:
        _RESULTS[number] = (title, False, "did not reach verdict: " + rec.summary())


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
