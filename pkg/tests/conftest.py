import pytest

from minfam.families import DelPezzoPair
from minfam.lattice import lattice
from minfam.subsystems import parse_label

DEG4_LABEL = "1123,45"
DEG2_LABEL = "278,12,23,34,45,56,67"
DEG1_LABEL = "278,12,23,34,45,56,67,78"


def pair_of(r, label="", q=1):
    lat = lattice("B", r)
    return DelPezzoPair(lat, q, parse_label(label, lat))


@pytest.fixture
def deg4():
    return pair_of(5, DEG4_LABEL)


@pytest.fixture
def deg2():
    return pair_of(7, DEG2_LABEL)


@pytest.fixture
def deg1():
    return pair_of(8, DEG1_LABEL)


def random_label(lat, rng, size=None):
    """Greedy random simple system drawn from the label pool."""
    from minfam.subsystems import RootSubsystem, label_pool

    pool = list(label_pool(lat))
    rng.shuffle(pool)
    chosen = []
    limit = lat.r if size is None else size
    for c in pool:
        if len(chosen) >= limit:
            break
        if all(c.dot(x) in (0, 1) for x in chosen):
            chosen.append(c)
    if size is None:
        chosen = chosen[: rng.randint(0, len(chosen))]
    return RootSubsystem(lat, tuple(chosen))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
