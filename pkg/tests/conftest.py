import time
from contextlib import contextmanager

import pytest

_CRITERIA: dict[int, tuple[str, str, float, str]] = {}


class CriterionRecorder:
    """Times a block and records one PASS/FAIL line for an acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.failures: list[str] = []
        self.started = time.perf_counter()

    def expect(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    @contextmanager
    def timed(self, limit: float | None = None, what: str = "runtime"):
        t0 = time.perf_counter()
        yield
        dt = time.perf_counter() - t0
        if limit is not None:
            self.expect(dt < limit, f"{what} {dt:.1f}s exceeds {limit:.0f}s")

    def finish(self) -> None:
        status = "FAIL" if self.failures else "PASS"
        detail = "; ".join(self.failures)
        elapsed = time.perf_counter() - self.started
        _CRITERIA[self.number] = (status, self.title, elapsed, detail)
        line = f"CRITERION {self.number:2d} {status}: {self.title} [{elapsed:.1f}s]"
        print("\n" + line + (f" -- {detail}" if detail else ""))
        assert not self.failures, detail


@pytest.fixture
def criterion():
    def make(number: int, title: str) -> CriterionRecorder:
        return CriterionRecorder(number, title)
    return make


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title, elapsed, detail = _CRITERIA[n]
        terminalreporter.write_line(f"CRITERION {n:2d} {status}: {title} [{elapsed:.1f}s]" + (f" -- {detail}" if detail else ""))
