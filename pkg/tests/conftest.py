from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tropnev import plfun
from tropnev.core import BOTTOM

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SCENARIOS = Path(__file__).resolve().parents[1] / "src" / "tropnev" / "scenarios"


def rationals(lo=-20, hi=20, max_den=6):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def trop_scalars():
    return st.one_of(st.just(BOTTOM), rationals())


@st.composite
def polynomials(draw, max_terms=4):
    slopes = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=max_terms, unique=True))
    return plfun.from_tropical_polynomial([(draw(rationals(-6, 6)), s) for s in slopes])


@st.composite
def pl_functions(draw, max_pieces=5):
    bps = sorted(set(draw(st.lists(rationals(-8, 8, 3), max_size=max_pieces))))
    slopes = draw(st.lists(rationals(-4, 4, 2), min_size=len(bps) + 1, max_size=len(bps) + 1))
    return plfun.PLFunction.from_pieces((0, draw(rationals(-5, 5))), bps, slopes)


@pytest.fixture
def scenario_dir():
    return SCENARIOS


# -- acceptance reporting ------------------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, label = marker.args
    ok = rep.passed and not rep.skipped
    prev = _CRITERIA.get(number)
    _CRITERIA[number] = (label, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        label, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {label}")
