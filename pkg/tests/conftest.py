from importlib import resources
from pathlib import Path

import pytest
from hypothesis import settings

from betti_char.problem import load_problem

settings.register_profile("default", deadline=None)
settings.load_profile("default")

DATA = Path(str(resources.files("betti_char") / "data"))

# class order used throughout: (1234), (123), (12)(34), (12), id
S4_TABLE = {
    (0, (2,)): (0, 0, 2, 2, 6),
    (1, (3,)): (0, -1, 0, 0, 8),
    (2, (4,)): (1, 0, -1, -1, 3),
}

D1_TWISTED_1234 = [
    ["-x2", "0", "-x3", "0", "0", "0", "0", "0"],
    ["x1", "-x1", "0", "0", "-x3", "0", "0", "0"],
    ["0", "x4", "0", "0", "0", "0", "-x3", "0"],
    ["0", "0", "x1", "-x1", "x2", "-x2", "0", "0"],
    ["0", "0", "0", "x4", "0", "0", "x2", "-x2"],
    ["0", "0", "0", "0", "0", "x4", "0", "x1"],
]

D2_TWISTED_1234 = [
    ["x3", "x3", "0"], ["0", "x3", "0"], ["-x2", "-x2", "0"], ["0", "-x2", "x2"],
    ["x1", "0", "0"], ["0", "0", "-x1"], ["0", "x4", "0"], ["0", "0", "x4"],
]

LIFT1_1234 = [
    [0, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 1],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
]

LIFT2_1234 = [[0, -1, 1], [1, 1, 0], [0, 1, 0]]


def problem_path(name):
    return DATA / f"{name}.json"


@pytest.fixture(scope="session")
def s4_imported():
    return load_problem(problem_path("s4_imported"))


@pytest.fixture(scope="session")
def s4_taylor():
    return load_problem(problem_path("s4_taylor"))


@pytest.fixture(scope="session")
def s3_triangle():
    return load_problem(problem_path("s3_triangle"))


@pytest.fixture(scope="session")
def s4_quotient():
    return load_problem(problem_path("s4_quotient"))


@pytest.fixture(scope="session")
def R4(s4_imported):
    return s4_imported.ring


@pytest.fixture(scope="session")
def S4(s4_imported):
    return s4_imported.group


@pytest.fixture(scope="session")
def s4_complex(s4_imported):
    return s4_imported.complex


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
