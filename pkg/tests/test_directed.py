import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from edgeaug.directed import (
    ExtensionGraph,
    HalfExtension,
    TooSmall,
    _splittable,
    augment_directed,
    build_extension,
    complete_eta,
    half_extension,
    half_extension_fast_path,
    intersection_level,
    minimal_half_extension,
    split_all,
)
from edgeaug.graph import Digraph, InputError, InvariantError, reverse
from edgeaug.mincut import is_ks_connected, strong_connectivity
from edgeaug.oracle import brute_alpha, brute_min_augmentation, cut_counts


def feasible(G, k, eta):
    rho, _ = cut_counts(G)
    full = (1 << G.n) - 1
    return all(rho[A] + sum(eta[v] for v in range(G.n) if A >> v & 1) >= k for A in range(1, full))


def assert_minimal_half_extension(G, k, eta):
    assert feasible(G, k, eta)
    for v in range(G.n):
        if eta[v] > 0:
            lower = list(eta)
            lower[v] -= 1
            assert not feasible(G, k, lower)


def brute_complete_eta(G, k, partial, a):
    rho, _ = cut_counts(G)
    full = (1 << G.n) - 1
    need = 0
    for A in range(1, full):
        if A >> a & 1:
            rest = sum(partial[v] for v in range(G.n) if v != a and A >> v & 1)
            need = max(need, k - rho[A] - rest)
    return need


# -- examples ---------------------------------------------------------------


def test_complete_eta_examples(c3, double_c3):
    assert complete_eta(c3, 2, [0, 1, 1], 0) == 1
    assert complete_eta(double_c3, 2, [0, 0, 0], 0) == 0
    assert complete_eta(Digraph(1), 3, [0], 0) == 0
    with pytest.raises(InputError):
        complete_eta(c3, 2, [0, 1, 1], 3)
    with pytest.raises(InputError):
        complete_eta(c3, 2, [0, 5, 1], 0)


def test_intersection_level_examples(c3, double_c3):
    assert intersection_level(c3, 0, 2) == 1
    assert intersection_level(double_c3, 0, 2) == 2
    assert intersection_level(c3, 0, 0) == 0


def test_minimal_half_extension_examples(c3, double_c3, parallel):
    assert minimal_half_extension(c3, 2) == HalfExtension((1, 1, 1))
    assert minimal_half_extension(double_c3, 2) == HalfExtension((0, 0, 0))
    assert minimal_half_extension(parallel, 2) == HalfExtension((2, 0))


def test_fast_path_examples(c3, double_c3):
    assert half_extension_fast_path(c3, 2) == HalfExtension((1, 1, 1))
    assert isinstance(half_extension_fast_path(double_c3, 2), TooSmall)
    assert half_extension_fast_path(Digraph(2), 1) == HalfExtension((1, 1))
    assert half_extension(c3, 2) == (HalfExtension((1, 1, 1)), 3)


def test_build_extension_examples(c3, parallel):
    eta = HalfExtension((1, 1, 1))
    Gx = build_extension(c3, 2, eta, eta)
    assert Gx.in_degree == Gx.out_degree == 3
    zero = build_extension(c3, 1, HalfExtension((0, 0, 0)), HalfExtension((0, 0, 0)))
    assert zero.in_degree == 0 and is_ks_connected(zero, 1)
    Gp = build_extension(parallel, 2, HalfExtension((2, 0)), HalfExtension((0, 2)))
    assert Gp.out_star == (2, 0) and Gp.in_star == (0, 2)


def test_build_extension_pads_vertex_zero(c3):
    Gx = build_extension(c3, 2, HalfExtension((0, 2, 1)), HalfExtension((0, 0, 1)))
    assert Gx.in_star == (2, 0, 1) and Gx.out_star == (0, 2, 1)


def test_split_all_examples(c3, parallel):
    eta = HalfExtension((1, 1, 1))
    edges = split_all(build_extension(c3, 2, eta, eta), 2, validate=True)
    assert len(edges) == 3
    assert strong_connectivity(c3.with_edges(edges), 2) == 2
    assert split_all(ExtensionGraph(c3, (0, 0, 0), (0, 0, 0)), 1) == []
    Gp = build_extension(parallel, 2, HalfExtension((2, 0)), HalfExtension((0, 2)))
    assert split_all(Gp, 2, validate=True) == [(1, 0), (1, 0)]


def test_split_all_rejects_unbalanced_or_disconnected(c3):
    with pytest.raises(InputError):
        split_all(ExtensionGraph(c3, (1, 0, 0), (0, 0, 0)), 1)
    with pytest.raises(InputError):
        split_all(ExtensionGraph(c3, (0, 0, 0), (0, 0, 0)), 2, validate=True)


def test_augment_directed_examples(c3, double_c3):
    assert augment_directed(double_c3, 2).edges == []
    res = augment_directed(c3, 2)
    assert res.gamma == 3 and len(res.edges) == 3 and res.verified
    assert (res.alpha_in, res.alpha_out) == (3, 3)
    assert augment_directed(Digraph(1), 4).edges == []
    with pytest.raises(InputError):
        augment_directed(c3, 0)


# -- properties --------------------------------------------------------------


@given(digraphs(max_n=6, max_m=12, min_n=2), st.integers(1, 3))
def test_half_extensions_are_minimal(G, k):
    eta, alpha = half_extension(G, k)
    assert_minimal_half_extension(G, k, eta.eta)
    if alpha is not None:
        assert alpha == brute_alpha(G, k)[0] == eta.total
    rooted = minimal_half_extension(G, k)
    assert_minimal_half_extension(G, k, rooted.eta)


@given(digraphs(max_n=6, max_m=12, min_n=2), st.integers(1, 3), st.data())
def test_complete_eta_matches_enumeration(G, k, data):
    a = data.draw(st.integers(0, G.n - 1))
    partial = data.draw(st.lists(st.integers(0, k), min_size=G.n, max_size=G.n))
    assert complete_eta(G, k, partial, a) == brute_complete_eta(G, k, partial, a)


@given(digraphs(max_n=6, max_m=12, min_n=2), st.integers(0, 4), st.data())
def test_intersection_level_matches_cut_minimum(G, max_level, data):
    a = data.draw(st.integers(0, G.n - 1))
    rho, _ = cut_counts(G)
    cut = min(rho[A] for A in range(1, 1 << G.n) if not A >> a & 1)
    assert intersection_level(G, a, max_level) == min(max_level, cut)


@given(digraphs(max_n=5, max_m=8, min_n=2), st.integers(1, 3))
def test_augment_directed_is_optimal(G, k):
    res = augment_directed(G, k, validate_splits=True)
    assert res.gamma == len(res.edges) == brute_min_augmentation(G, k)
    assert res.gamma == max(0, res.alpha_in, res.alpha_out)
    assert strong_connectivity(G.with_edges(res.edges), k) == k


@given(digraphs(max_n=5, max_m=8, min_n=2), st.integers(1, 3))
def test_cheap_split_test_agrees_with_all_pairs(G, k):
    """Every candidate pair, at every stage of a real split sequence."""
    eta, _ = half_extension(G, k)
    eta_rev, _ = half_extension(reverse(G), k)
    states = [build_extension(G, k, eta, eta_rev)]
    split_all(states[0], k, on_split=states.append)
    for Gx in states:
        n = G.n
        for u in range(n):
            if not Gx.in_star[u]:
                continue
            for v in range(n):
                if v == u or not Gx.out_star[v]:
                    continue
                in_star, out_star = list(Gx.in_star), list(Gx.out_star)
                in_star[u] -= 1
                out_star[v] -= 1
                after = ExtensionGraph(Gx.base.with_edges([(u, v)]), tuple(out_star), tuple(in_star))
                fast = _splittable(list(Gx.base.edges), n, list(Gx.in_star), list(Gx.out_star), u, v, k)
                assert fast == is_ks_connected(after, k, "python")


def test_split_hook_sees_every_state(c3):
    eta = HalfExtension((1, 1, 1))
    seen = []
    split_all(build_extension(c3, 2, eta, eta), 2, on_split=seen.append)
    assert [Gx.in_degree for Gx in seen] == [2, 1, 0]
    assert all(is_ks_connected(Gx, 2) for Gx in seen)


def test_invariant_error_when_no_split_exists():
    # s attached to one vertex only cannot be split off
    G = Digraph(2, ((0, 1),))
    with pytest.raises(InvariantError):
        split_all(ExtensionGraph(G, (1, 0), (1, 0)), 1)
