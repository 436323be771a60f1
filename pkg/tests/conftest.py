import pytest


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, _ in CRITERIA:
        if n in RESULTS:
            ok, line = RESULTS[n]
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {line}")
        else:
            terminalreporter.write_line(f"[SKIP] {n:2d}. {title}: not run")


@pytest.fixture
def rng():
    import random

    return random.Random(1234)
