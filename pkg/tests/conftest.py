import pytest

from coxred.coxdiagram import DELTA_2, DELTA_3, parse_diagram
from coxred.finred import e_frame_representation
from coxred.numberfield import splitting
from coxred.vinberg import build_lattice


@pytest.fixture(scope="session")
def delta3():
    return parse_diagram(DELTA_3)


@pytest.fixture(scope="session")
def delta2():
    return parse_diagram(DELTA_2)


@pytest.fixture(scope="session")
def lattice3(delta3):
    return build_lattice(delta3)


@pytest.fixture(scope="session")
def prime5():
    return splitting(5, 5)


@pytest.fixture(scope="session")
def rep5(lattice3, prime5):
    """Reduction of the [5,3,3,5] lattice mod sqrt 5 in e-coordinates."""
    return e_frame_representation(lattice3, prime5)


# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {desc}")
