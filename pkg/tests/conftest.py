import numpy as np
import pytest

from mimo_noma import EffectiveCluster, PowerSplit

FIG1 = dict(gamma1=0.052, gamma2=0.0052, rho=1000.0)


@pytest.fixture
def fig1_cluster():
    return EffectiveCluster(**FIG1)


@pytest.fixture
def half_split():
    return PowerSplit(0.5, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# acceptance lines collected by test_acceptance.py, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        for line in ACCEPTANCE[key]:
            terminalreporter.write_line(line)
