import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from qgroupoid import linalg
from qgroupoid.weak import cyclic_group, disjoint_trivial, disjoint_union, groupoid_weak_hopf, pair_groupoid

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def F(x, y=1):
    return Fraction(x, y)


@pytest.fixture(params=["python", "compiled"])
def backend(request):
    if request.param == "compiled" and not linalg.compiled_available():
        pytest.skip("compiled kernels not built")
    old = linalg.BACKEND
    linalg.use_backend(request.param)
    yield request.param
    linalg.use_backend(old)


GROUPOIDS = {
    "pair2": lambda: pair_groupoid(2),
    "pair3": lambda: pair_groupoid(3),
    "C2": lambda: cyclic_group(2),
    "triv2": lambda: disjoint_trivial(2),
    "C2+pt": lambda: disjoint_union(cyclic_group(2), disjoint_trivial(1)),
}


@pytest.fixture(scope="session")
def pair2():
    return groupoid_weak_hopf(pair_groupoid(2))


@pytest.fixture(scope="session")
def c2():
    return groupoid_weak_hopf(cyclic_group(2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod._line(k))
