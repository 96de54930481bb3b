import pytest

from gmtperm.field import make_field_tower

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f9():
    """F_3 < F_9 with modulus X^2 + 1, so the generator is i."""
    return make_field_tower(3, 1, 2, ext_label="i")


@pytest.fixture(scope="session")
def f81():
    return make_field_tower(3, 2, 2)


@pytest.fixture(scope="session")
def f512():
    return make_field_tower(2, [1, 1, 0, 1], 3)


@pytest.fixture(scope="session")
def f16():
    return make_field_tower(2, 2, 2)


@pytest.fixture(scope="session")
def f27():
    return make_field_tower(3, 1, 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
