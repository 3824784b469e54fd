from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hopfhom import Field, appendix_d1, group_hopf

settings.register_profile("default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def F2():
    return Field.prime(2)


@pytest.fixture(scope="session")
def F3():
    return Field.prime(3)


@pytest.fixture(scope="session")
def F5():
    return Field.prime(5)


@pytest.fixture(scope="session")
def QQ():
    return Field.rational()


@pytest.fixture(scope="session")
def d1():
    return appendix_d1()


@pytest.fixture(scope="session")
def kz2(F3):
    return group_hopf(F3, [2])


@pytest.fixture(scope="session")
def kz4_f5(F5):
    return group_hopf(F5, [4])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
