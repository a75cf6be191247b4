import pytest

from helpers import ACCEPTANCE_LINES

from twodir_moments.maskio import resolve_mask

@pytest.fixture(scope="session")
def ex51():
    return resolve_mask("example_5_1")


@pytest.fixture(scope="session")
def ex52():
    return resolve_mask("example_5_2")


@pytest.fixture(scope="session", params=["example_5_1", "example_5_2"])
def example(request):
    return resolve_mask(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
