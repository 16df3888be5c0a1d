import pytest

from clab.distribution import build_buchstab_table
from clab.primes import build_prime_table

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def t_small():
    return build_prime_table(10**4)


@pytest.fixture(scope="session")
def t_big():
    return build_prime_table(10**6)


@pytest.fixture(scope="session")
def buchstab():
    return build_buchstab_table()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
