import random
from fractions import Fraction

import pytest

from pauli_cone.cone_geometry import enumerate_rays, pair_from_p
from pauli_cone.symmetry import label_rays

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def rays1():
    return label_rays(enumerate_rays(1))


@pytest.fixture(scope="session")
def rays2():
    return label_rays(enumerate_rays(2))


def random_member(rays, rng: random.Random, terms: int = 3):
    """Nonnegative rational combination of a few rays (always a cone member)."""
    p = [Fraction(0)] * len(rays[0].pair.p)
    for ray in rng.sample(rays, rng.randint(1, terms)):
        c = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        p = [a + c * b for a, b in zip(p, ray.pair.p)]
    return pair_from_p(p)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
