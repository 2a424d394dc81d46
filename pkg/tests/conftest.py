import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graverip.core import ILPInstance, matvec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def matrices(draw, max_m=3, max_n=4, entry=2, min_m=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(1, max_n))
    row = st.lists(st.integers(-entry, entry), min_size=n, max_size=n)
    return draw(st.lists(row, min_size=m, max_size=m)), n


@st.composite
def instances(draw, max_m=3, max_n=4, entry=2, bound=3, weight=3):
    A, n = draw(matrices(max_m, max_n, entry))
    l = draw(st.lists(st.integers(-bound, bound), min_size=n, max_size=n))
    u = [draw(st.integers(lo, bound)) for lo in l]
    if draw(st.booleans()):
        x = [draw(st.integers(lo, hi)) for lo, hi in zip(l, u)]
        b = list(matvec(A, x))
    else:
        b = draw(st.lists(st.integers(-2 * bound, 2 * bound), min_size=len(A), max_size=len(A)))
    w = draw(st.lists(st.integers(-weight, weight), min_size=n, max_size=n))
    return ILPInstance(A, b, w, l, u)


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for k in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[k])
