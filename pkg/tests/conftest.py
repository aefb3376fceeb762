import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, tuple[str, str, float]] = {}


@pytest.fixture
def criterion():
    """Context manager recording a pass/fail line (with timing) for one acceptance criterion."""

    @contextmanager
    def run(number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS[number] = (title, "FAIL", time.perf_counter() - start)
            print(f"criterion {number:2d} FAIL  {title}")
            raise
        _RESULTS[number] = (title, "PASS", time.perf_counter() - start)
        print(f"criterion {number:2d} PASS  {title}")

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_RESULTS):
        title, status, seconds = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({seconds:6.2f} s)  {title}")
