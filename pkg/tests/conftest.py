import contextlib
import pathlib
import time

import pytest
from hypothesis import settings

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


def pytest_configure(config):
    config.acceptance = []


@pytest.fixture
def criterion(request):
    """Time a block as acceptance criterion n; fail if it exceeds the limit."""
    log = request.config.acceptance

    @contextlib.contextmanager
    def run(n, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            log.append((n, title, ok and within, elapsed, limit))
        assert within, f"criterion {n} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    if not config.acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, elapsed, limit in sorted(config.acceptance):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict}  [{n}] {title}  ({elapsed:.2f}s, limit {limit}s)")
