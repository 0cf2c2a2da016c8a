import pytest
from hypothesis import HealthCheck, settings

from stiffres.quotient import QuotientRing

settings.register_profile(
    "repo", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")


@pytest.fixture
def xy_ring():
    """Q[x,y]/(xy), the running zerodivisor example."""
    return QuotientRing.build("Q", "xy", ["x*y"])


@pytest.fixture
def poly2():
    return QuotientRing.build("Q", "xy", [])


@pytest.fixture
def poly3():
    return QuotientRing.build("Q", "xyz", [])


@pytest.fixture
def plane_line():
    return QuotientRing.build("Q", "xyz", ["x*z", "y*z"])


ACCEPTANCE = {}


def record_criterion(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
