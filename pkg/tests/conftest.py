import os

import pytest
from hypothesis import HealthCheck, settings

from abbrep import field

settings.register_profile(
    "abb", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "abb"))

# (p, h, n) triples small enough to enumerate
SMALL = [(3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 2, 3), (3, 1, 4), (2, 2, 4)]


@pytest.fixture(params=SMALL, ids=lambda t: "q%d_n%d" % (t[0] ** t[1], t[2]))
def ctx(request):
    return field(*request.param)


@pytest.fixture
def f9():
    return field(3, 1, 2)


@pytest.fixture
def f27():
    return field(3, 1, 3)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
