import numpy as np
import pytest

from dexpbounds import builtin

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[e.id for e in builtin.catalog()])
def entry(request):
    return builtin.get(request.param)


def alg(id_):
    return builtin.get(id_).algebra


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
