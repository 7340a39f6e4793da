import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from edgeaug.directed import ExtensionGraph
from edgeaug.graph import Digraph, InputError
from edgeaug.mincut import (
    ArcNetwork,
    FlowNetwork,
    is_ks_connected,
    ks_connectivity_pairs,
    local_connectivity,
    max_flow,
    max_flow_between,
    rooted_ks_connected,
    strong_connectivity,
)
from edgeaug.oracle import brute_is_strongly_k_connected, brute_min_cut

BACKENDS = ["python", "scipy"]


def test_flow_examples(c3, double_c3):
    assert local_connectivity(Digraph(2, ((0, 1), (0, 1))), 0, 1) == 2
    assert local_connectivity(c3, 0, 2) == 1
    assert local_connectivity(double_c3, 0, 2, cap_at=2) == 2


def test_flow_rejects_equal_endpoints(c3):
    with pytest.raises(InputError):
        local_connectivity(c3, 1, 1)
    with pytest.raises(InputError):
        ArcNetwork(3, c3.edges).flow(0, 0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_strong_connectivity_examples(c3, double_c3, backend):
    assert strong_connectivity(c3, 3, backend) == 1
    assert strong_connectivity(double_c3, 3, backend) == 2
    assert strong_connectivity(Digraph(2), 3, backend) == 0
    assert strong_connectivity(Digraph(1), 3, backend) == 3


@pytest.mark.parametrize("backend", BACKENDS)
def test_is_ks_connected_examples(c3, backend):
    star = ExtensionGraph(c3, (1, 1, 1), (1, 1, 1))
    assert is_ks_connected(star, 2, backend)
    assert not is_ks_connected(ExtensionGraph(c3, (0, 0, 0), (0, 0, 0)), 2, backend)
    assert is_ks_connected(ExtensionGraph(c3, (0, 0, 0), (0, 0, 0)), 0, backend)


@given(digraphs(max_n=6, max_m=14, min_n=2), st.data())
def test_max_flow_equals_enumerated_min_cut(G, data):
    s = data.draw(st.integers(0, G.n - 1))
    t = data.draw(st.integers(0, G.n - 2))
    t += t >= s
    expected = brute_min_cut(G, s, t)
    net = FlowNetwork.from_digraph(G)
    result = max_flow(net, s, t)
    assert result.value == expected
    assert ArcNetwork(G.n, G.edges, backend="scipy").flow(s, t) == expected
    # the residual source side is a minimum cut
    side = result.source_side()
    assert s in side and t not in side
    assert sum(1 for u, v in G.edges if u in side and v not in side) == expected


@given(digraphs(max_n=6, max_m=14, min_n=2), st.integers(0, 4), st.data())
def test_cap_is_respected(G, cap, data):
    s = data.draw(st.integers(0, G.n - 1))
    t = data.draw(st.integers(0, G.n - 2))
    t += t >= s
    true = brute_min_cut(G, s, t)
    for backend in BACKENDS:
        assert ArcNetwork(G.n, G.edges, backend=backend).flow(s, t, cap) == min(true, cap)


def test_flow_continues_from_existing_flow():
    net = FlowNetwork(3)
    net.add_arc(0, 1, 2)
    net.add_arc(1, 2, 2)
    assert max_flow(net, 0, 2, cap_at=1).value == 1
    assert max_flow(net, 0, 2).value == 1
    assert [net.flow(a) for a in range(2)] == [2, 2]
    assert (1, 0) in max_flow(net, 0, 2).residual_arcs()


@given(digraphs(max_n=6, max_m=16), st.integers(1, 3))
def test_strong_connectivity_matches_brute_force(G, k):
    for backend in BACKENDS:
        assert (strong_connectivity(G, k, backend) >= k) == brute_is_strongly_k_connected(G, k)


@given(digraphs(max_n=6, max_m=16, min_n=2), st.integers(1, 3), st.data())
def test_rooted_check_matches_all_pairs(G, k, data):
    root = data.draw(st.integers(0, G.n - 1))
    terminals = range(G.n)
    expected = ks_connectivity_pairs(G, terminals, k, "python") is None
    for backend in BACKENDS:
        assert rooted_ks_connected(G, terminals, k, root, backend) == expected


@given(digraphs(max_n=6, max_m=14, min_n=3))
def test_set_to_set_flow(G):
    sources, sinks = [0], [1, 2]
    via_python = max_flow_between(G, sources, sinks, backend="python")
    assert via_python == max_flow_between(G, sources, sinks, backend="scipy")
    merged = Digraph(G.n + 1, G.edges + ((1, G.n), (2, G.n), (1, G.n), (2, G.n)) * G.m)
    assert via_python == min(brute_min_cut(merged, 0, G.n), G.m)


def test_unknown_backend(c3):
    with pytest.raises(InputError):
        ArcNetwork(3, c3.edges, backend="gpu")
    with pytest.raises(InputError):
        max_flow_between(c3, [0], [0, 1])
