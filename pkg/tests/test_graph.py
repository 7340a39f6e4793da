import pytest
from hypothesis import given

from conftest import digraphs, ugraphs
from edgeaug.graph import (
    Digraph,
    GraphParseError,
    InputError,
    UGraph,
    VertexSet,
    boundary,
    cut_edges,
    doubled,
    parse_graph,
    reverse,
    serialize_graph,
)


def brute_boundary(G, A, kind):
    A = set(A)
    out = []
    for e, (u, v) in enumerate(G.edges):
        if kind == "rho" and u not in A and v in A:
            out.append(e)
        elif kind == "rho_rev" and u in A and v not in A:
            out.append(e)
        elif kind == "lambda" and u in A and v in A:
            out.append(e)
    return out


def test_boundary_examples(c3):
    assert [c3.edges[e] for e in boundary(c3, {0}, "rho")] == [(2, 0)]
    assert boundary(c3, set(), "rho") == []
    assert boundary(c3, {0, 1, 2}, "rho") == []
    assert [c3.edges[e] for e in boundary(c3, {0, 1}, "lambda")] == [(0, 1)]


@given(digraphs(max_n=5, max_m=10))
def test_boundary_matches_definition(G):
    for mask in range(1 << G.n):
        A = {v for v in range(G.n) if mask >> v & 1}
        for kind in ("rho", "rho_rev", "lambda"):
            assert sorted(boundary(G, A, kind)) == brute_boundary(G, A, kind)


def test_reverse(c3):
    assert reverse(c3).edges == ((1, 0), (2, 1), (0, 2))
    assert reverse(Digraph(2, ((0, 1),))).edges == ((1, 0),)


@given(digraphs())
def test_reverse_is_involution(G):
    assert reverse(reverse(G)) == G


def test_doubled_examples(p3):
    assert doubled(UGraph(2, ((0, 1),))).edges == ((0, 1), (1, 0))
    assert doubled(UGraph(3, ((0, 1), (1, 2), (0, 2)))).m == 6
    assert len(cut_edges(p3, {0})) == 1
    assert len(boundary(doubled(p3), {0}, "rho")) == 1


@given(ugraphs(max_n=5))
def test_doubled_cuts_match_undirected_cuts(Gu):
    D = doubled(Gu)
    for mask in range(1 << Gu.n):
        A = {v for v in range(Gu.n) if mask >> v & 1}
        assert len(boundary(D, A, "rho")) == len(cut_edges(Gu, A))


def test_parse_examples():
    assert parse_graph("3 3 directed\n1 2\n2 3\n3 1") == Digraph(3, ((0, 1), (1, 2), (2, 0)))
    assert parse_graph("1 0 directed") == Digraph(1)
    assert parse_graph("2 2 directed\n1 2\n1 2").edges == ((0, 1), (0, 1))
    assert isinstance(parse_graph("# comment\n2 1 undirected\n1 2  # trailing\n"), UGraph)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", None),
        ("3 x directed", 1),
        ("2 1 sideways\n1 2", 1),
        ("2 1 directed\n1 3", 2),
        ("2 1 directed\n1 1", 2),
        ("2 1 directed\n1", 2),
        ("2 2 directed\n1 2", None),
        ("-1 0 directed", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert isinstance(info.value, InputError)


@given(digraphs())
def test_serialize_round_trip(G):
    assert parse_graph(serialize_graph(G)) == G


@given(ugraphs())
def test_serialize_round_trip_undirected(Gu):
    assert parse_graph(serialize_graph(Gu)) == Gu


def test_constructor_validation():
    with pytest.raises(InputError):
        Digraph(2, ((0, 2),))
    with pytest.raises(InputError):
        Digraph(2, ((1, 1),))
    with pytest.raises(InputError):
        VertexSet(2, frozenset({3}))


def test_degree_helpers(c3):
    assert c3.indegrees() == [1, 1, 1]
    assert c3.without_edges_into(0).edges == ((0, 1), (1, 2))
    assert c3.with_edges([(0, 2)]).m == 4
