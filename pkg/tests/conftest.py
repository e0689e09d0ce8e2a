import sys

import numpy as np
import pytest

from weierquartic.autgroup import generate
from weierquartic.catalog import pencil_generators
from weierquartic.polyalg import HomPoly3

X = HomPoly3.monomial(1, 0, 0)
Y = HomPoly3.monomial(0, 1, 0)
Z = HomPoly3.monomial(0, 0, 1)


@pytest.fixture(scope="session")
def group():
    return generate(pencil_generators())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_quartic(rng, degree=4):
    coeffs = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            coeffs[(i, j, degree - i - j)] = rng.normal() + 1j * rng.normal()
    return HomPoly3(degree, coeffs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
