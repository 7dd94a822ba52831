import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from dblfrac.fixtures import CF_PASS, FIXTURES
from dblfrac.wgfrac import build_cw

settings.register_profile(
    "desk",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("desk")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen_oracles.json").read_text())


_CW_CACHE = {}


def cw_of(name):
    if name not in _CW_CACHE:
        cat, W = FIXTURES[name]()
        _CW_CACHE[name] = build_cw(cat, W)
    return _CW_CACHE[name]


@pytest.fixture(params=CF_PASS)
def cf_pass_cw(request):
    return cw_of(request.param)


@pytest.fixture
def interval_cw():
    return cw_of("interval")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.summary_line(n))
