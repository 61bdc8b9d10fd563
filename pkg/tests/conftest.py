import warnings

import pytest

from qrlink import link_budget as lb
from qrlink.errors import ScenarioWarning


def make_scenario(**kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScenarioWarning)
        return lb.Scenario(**kw)


@pytest.fixture
def xband():
    """X-band QR worked example at 400 K: lossless, 1 s, ns_eta = 1."""
    return make_scenario(f0=9.37e9, b=1e9, t_dwell=1.0, g=1000.0, sigma=1.0, t_s=400.0)


@pytest.fixture
def fig5():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScenarioWarning)
        return lb.fig5_scenario()


# -- acceptance reporting ---------------------------------------------------------

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the summary table."""

    def record(number, title, failures, details):
        _CRITERIA[number] = (title, failures, details)
        return failures

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, failures, details = _CRITERIA[number]
        status = "FAIL" if failures else "PASS"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}; {details}")
        for f in failures:
            terminalreporter.write_line(f"         - {f}")
