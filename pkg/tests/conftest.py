import pytest

from exactmis import generators


@pytest.fixture
def c5():
    return generators.cycle(5)


@pytest.fixture
def petersen():
    return generators.petersen()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
