import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from edgeaug.graph import Digraph, UGraph  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def c3():
    return Digraph(3, ((0, 1), (1, 2), (2, 0)))


@pytest.fixture
def double_c3():
    return Digraph(3, ((0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)))


@pytest.fixture
def parallel():
    # u => v: two parallel arcs from vertex 0 to vertex 1
    return Digraph(2, ((0, 1), (0, 1)))


@pytest.fixture
def p3():
    return UGraph(3, ((0, 1), (1, 2)))


@st.composite
def digraphs(draw, max_n=6, max_m=12, min_n=1):
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        return Digraph(n)
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 2)).map(lambda p: (p[0], p[1] + (p[1] >= p[0])))
    edges = draw(st.lists(pair, max_size=max_m))
    return Digraph(n, tuple(edges))


@st.composite
def ugraphs(draw, max_n=6, max_m=9, min_n=1):
    G = draw(digraphs(max_n, max_m, min_n))
    return UGraph(G.n, G.edges)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
