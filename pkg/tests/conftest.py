import random

import pytest
from hypothesis import HealthCheck, settings

from qkgv.geometry import CY3Data, GVTable
from qkgv.series import enumerate_classes

settings.register_profile("qkgv", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qkgv")


def rank1_geometry(kappa=5):
    return CY3Data(1, 1, [[1]], {(0, 0, 0): kappa})


def rank2_geometry():
    return CY3Data(2, 2, [[1, 0], [0, 1]], {(0, 0, 0): 5, (0, 1, 1): 1, (1, 1, 1): 2})


def random_gv(rank, cutoff, seed, bound=1000, density=1.0):
    rng = random.Random(seed)
    return GVTable(rank, {b: rng.randint(-bound, bound) for b in enumerate_classes(rank, cutoff)
                          if rng.random() < density})


@pytest.fixture
def quintic():
    return rank1_geometry(5)


@pytest.fixture
def rank2():
    return rank2_geometry()


# one line per acceptance criterion, printed again in the terminal summary
ACCEPTANCE = {}


def record_criterion(number, passed, detail, elapsed):
    line = f"[criterion {number:2d}] {'PASS' if passed else 'FAIL'}  {detail}  ({elapsed:.2f}s)"
    ACCEPTANCE[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
