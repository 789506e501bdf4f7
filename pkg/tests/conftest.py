from pathlib import Path

import pytest

from wsdkit.instances import generate, parse_instance
from wsdkit.rng import SplitMix64

DATA = Path(__file__).parent / "data"
FIXTURES = ("A", "B", "C3", "D", "E")


def load(name: str):
    return parse_instance((DATA / f"fixture{name}.json").read_text())


def fixture_path(name: str) -> str:
    return str(DATA / f"fixture{name}.json")


def random_instance(seed: int, p: int, nmax: int, max_coord: int = 100, positive: bool = True):
    """Seeded instance whose size is itself drawn from the seed."""
    n = SplitMix64(seed ^ 0x5EED).randint(1, nmax)
    return generate(seed, n, p, max_coord, positive)


@pytest.fixture
def fa():
    return load("A")


@pytest.fixture
def fb():
    return load("B")


@pytest.fixture
def fc3():
    return load("C3")


@pytest.fixture
def fd():
    return load("D")


@pytest.fixture
def fe():
    return load("E")


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(acceptance.RESULTS):
            terminalreporter.write_line(acceptance.RESULTS[k])
