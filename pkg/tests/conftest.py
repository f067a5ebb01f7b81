import math
import os

import numpy as np
import pytest
from hypothesis import settings

from closedloop.model import SystemParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def fig2_params(lam=0.4, phi=1.5 * math.pi, **kw):
    base = dict(kappa_a=1.0, kappa_b=1.0, gamma_c=2.0, lam=lam, phi=phi, g_a=3.2, g_b=5.0)
    base.update(kw)
    return SystemParams(**base)


@pytest.fixture
def fig2a():
    return fig2_params()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, filled by test_acceptance and echoed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
