import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fwa.energy import ENERGY, update
from fwa.generate import random_model, random_pwl
from fwa.kleene import BOOL, FUZZ, INF, TROP

settings.register_profile(
    "default", deadline=None, max_examples=80, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SCALARS = [BOOL, TROP, FUZZ]

rationals = st.builds(Fraction, st.integers(0, 12), st.sampled_from([1, 2, 3]))
ext_rationals = st.one_of(rationals, st.just(INF))
updates = st.builds(update, st.integers(-3, 3), st.integers(-3, 3))
pwls = st.integers(0, 2**31).map(lambda s: random_pwl(random.Random(s)))
energies = st.one_of(updates, pwls)
seeds = st.integers(0, 2**31)


def elements(alg):
    if alg is BOOL:
        return st.booleans()
    if alg is ENERGY:
        return energies
    return ext_rationals


def models(max_features=3):
    return st.integers(0, max_features).map(lambda k: random_model(random.Random(0), k))


# acceptance summary: one line per criterion, printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
