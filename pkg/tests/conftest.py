import pytest

from involtrace.finite_field import first_irreducible, make_field


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def f243():
    """GF(3^5) with root eta of x^5+2x^3+2x^2+x+1, and u = 2 eta^3 + eta."""
    spec = make_field(3, 5, [1, 1, 2, 2, 0, 1])
    return spec, spec.element([0, 1, 0, 2])


@pytest.fixture(scope="session")
def f3125():
    """GF(5^5) with root theta of x^5+4x^4+3x^3+x^2+2x+3, u = theta^3+2theta^2+3theta."""
    spec = make_field(5, 5, [3, 2, 1, 3, 4, 1])
    return spec, spec.element([0, 3, 2, 1])


@pytest.fixture(scope="session")
def f256():
    """GF(2^8) = GF(4^4) with root z of x^8+x^7+x^3+x^2+1, u = z^7 + z^2."""
    spec = make_field(2, 8, [1, 0, 1, 1, 0, 0, 0, 1, 1])
    return spec, spec.element([0, 0, 1, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def f125():
    return make_field(5, 3, first_irreducible(5, 3))


@pytest.fixture(scope="session")
def f343():
    return make_field(7, 3, first_irreducible(7, 3))


@pytest.fixture(scope="session")
def f16():
    return make_field(2, 4, first_irreducible(2, 4))


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2, first_irreducible(3, 2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
