import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from choqlab import (
    LovaszExtension,
    MedianAdditiveExtension,
    SymmetricLovaszExtension,
    make_set_function,
)

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# The running two-criterion example and the min capacity.
PHI = [0.0, 0.3, 0.6, 1.0]
PHI_NEG = [0.0, 0.5, 0.5, 1.0]
MIN_CAP = [0.0, 0.0, 0.0, 1.0]


@pytest.fixture
def phi():
    return make_set_function(2, PHI)


@pytest.fixture
def L(phi):
    return LovaszExtension(phi)


@pytest.fixture
def S(phi):
    return SymmetricLovaszExtension(phi)


@pytest.fixture
def L_min():
    return LovaszExtension(make_set_function(2, MIN_CAP))


@pytest.fixture
def M(phi):
    return MedianAdditiveExtension(phi, make_set_function(2, PHI_NEG))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
