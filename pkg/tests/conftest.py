import pytest

from mvaskey.params import validate

STANDARD = {"sigma": "1/2", "tau": "1/2", "tau0": "1/2", "tau1": "1/3", "tau2": "1/4", "tau3": "1/5"}
SELF_DUAL = dict(STANDARD, tau0="1/12", tau1="1/2", tau2="1/3", tau3="1/2")


def params_for(n, raw=STANDARD):
    return validate(dict(raw, n=n))


@pytest.fixture(scope="session")
def p1():
    return params_for(1)


@pytest.fixture(scope="session")
def p2():
    return params_for(2)


@pytest.fixture(scope="session")
def p3():
    return params_for(3)


@pytest.fixture(scope="session")
def p2_self_dual():
    return params_for(2, SELF_DUAL)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
