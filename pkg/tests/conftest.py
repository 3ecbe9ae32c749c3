import pytest
from hypothesis import settings

from incgb.engine import equivariant_buchberger
from incgb.orders import preset
from incgb.problems import onefactor_generators, onefactor_reference_basis, onefactor_ring

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def of_ring():
    return onefactor_ring()


@pytest.fixture(scope="session")
def of_order(of_ring):
    return preset("elim-onefactor", of_ring)


@pytest.fixture(scope="session")
def of_result(of_ring, of_order):
    return equivariant_buchberger(onefactor_generators(of_ring), of_order)


@pytest.fixture(scope="session")
def of_reference(of_ring):
    return onefactor_reference_basis(of_ring)


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def report():
    """Record the one-line outcome of an acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
