from __future__ import annotations

import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``with criterion(n, title, budget):`` times the block and logs a PASS/FAIL line."""

    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE[number] = f"criterion {number:2d}: FAIL  {title} ({elapsed:.2f}s; {type(exc).__name__}: {exc})"
            print(_ACCEPTANCE[number])
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < budget
        verdict = "PASS" if ok else "FAIL"
        _ACCEPTANCE[number] = f"criterion {number:2d}: {verdict}  {title} ({elapsed:.2f}s, budget {budget:g}s)"
        print(_ACCEPTANCE[number])
        assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
