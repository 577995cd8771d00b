from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from daggerlab.backend import Backend
from daggerlab.groupoid import battery

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture(params=list(Backend), ids=lambda b: b.value)
def backend(request) -> Backend:
    return request.param


BATTERY = battery()


@pytest.fixture(params=BATTERY, ids=lambda G: G.name)
def groupoid(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
