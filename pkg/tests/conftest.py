import random

import pytest

from rp3kh import corpus
from rp3kh.generate import random_diagram


def seeded_diagrams(count: int, max_crossings: int = 5, seed: int = 2024):
    """Deterministic sample of valid diagrams with 1..max_crossings crossings."""
    rng = random.Random(seed)
    return [random_diagram(rng, rng.randint(1, max_crossings)) for _ in range(count)]


@pytest.fixture(scope="session")
def example():
    return corpus.get("example")


@pytest.fixture(scope="session")
def all_corpus():
    return corpus.corpus()


# One line per acceptance criterion, repeated at the end of the pytest run.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
