import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from edgeaug.certificate import (
    Certificate,
    ContractViolation,
    alpha_values,
    check_feasible,
    closed_set,
    format_certificate,
    is_F_closed,
    optimal_subpartition,
    parse_certificate,
    verify_minmax,
)
from edgeaug.graph import Digraph, InputError, InvariantError
from edgeaug.kforest import TauSpec, labeling_from_labels, solve
from edgeaug.oracle import brute_alpha, brute_subpartition_max


def test_closed_set_examples(c3):
    F = solve(c3, 2)
    assert closed_set(F, 0) == frozenset({0})
    lone = solve(Digraph(3, ((0, 1),)), 2)
    assert closed_set(lone, 2) == frozenset({2})


def test_closed_set_rejects_open_vertex(c3):
    F = labeling_from_labels(c3, 1, [1, 0, 0])
    with pytest.raises(ContractViolation):
        closed_set(F, 2)


def test_is_F_closed_examples(c3):
    F = labeling_from_labels(c3, 2, [1, 1, 2])
    assert is_F_closed(F, {0})
    assert not is_F_closed(F, {0, 1})
    spanning = solve(Digraph(3, ((0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2))), 1)
    assert is_F_closed(spanning, {0, 1, 2})


def test_optimal_subpartition_examples(c3, parallel):
    cert = optimal_subpartition(solve(c3, 2))
    assert cert.sets == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert cert.total == 3
    two = optimal_subpartition(solve(parallel, 2))
    assert two.sets == [frozenset({0})] and two.total == 2


def test_optimal_subpartition_empty_when_no_deficit(double_c3):
    F = solve(double_c3, 2, TauSpec.at(0))
    assert F.total_deficit() == 0
    assert optimal_subpartition(F).sets == []


def test_verify_minmax_examples(c3):
    F = solve(c3, 2)
    report = verify_minmax(c3, 2, F.label, None, optimal_subpartition(F))
    assert report.optimal and report.deficit == 3
    weak = Certificate.build(c3, 1, [0, 0, 0], [frozenset({0})])
    report = verify_minmax(c3, 1, [1, 0, 0], None, weak)
    assert report.deficit == 2 and weak.total == 0 and not report.optimal


def test_verify_minmax_strongly_connected_spanning_tree(c3):
    F = solve(c3, 1)
    cert = optimal_subpartition(F)
    report = verify_minmax(c3, 1, F.label, None, cert)
    assert report.optimal and report.deficit == 1
    assert brute_subpartition_max(c3, 1) == 1


def test_verify_minmax_rejects_infeasible(c3):
    with pytest.raises(InvariantError):
        verify_minmax(c3, 1, [1, 1, 1], None, Certificate(1, [], [], 0))
    assert check_feasible(c3, 1, [1, 1, 1], [0, 0, 0])


def test_verify_minmax_flags_overlap_and_wrong_values(c3):
    F = solve(c3, 2)
    bad = Certificate(2, [frozenset({0}), frozenset({0, 1})], [5, 1], 6)
    report = verify_minmax(c3, 2, F.label, None, bad)
    assert not report.disjoint and not report.values_match and not report.optimal


def test_alpha_examples(c3, parallel):
    assert alpha_values(c3, 2) == (3, 3)
    assert alpha_values(parallel, 2) == (2, 2)
    double = Digraph(3, ((0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)))
    a_in, a_out = alpha_values(double, 2)
    assert a_in <= 0 and a_out <= 0


@given(digraphs(max_n=6, max_m=14), st.integers(1, 4), st.booleans())
def test_certificate_matches_subpartition_oracle(G, k, rooted):
    tau = TauSpec.at(0) if rooted else TauSpec.zero()
    F = solve(G, k, tau)
    cert = optimal_subpartition(F)
    report = verify_minmax(G, k, F.label, tau, cert)
    assert report.optimal
    assert cert.total == brute_subpartition_max(G, k, tau)
    covered = set().union(*cert.sets) if cert.sets else set()
    assert all(v in covered for v in range(G.n) if F.deficit(v) > 0)
    for A in cert.sets:
        assert is_F_closed(F, A)


@given(digraphs(max_n=6, max_m=12), st.integers(1, 3))
def test_every_closed_set_is_closed(G, k):
    F = solve(G, k)
    for v in range(G.n):
        if F.deficit(v) > 0:
            assert is_F_closed(F, closed_set(F, v))


@given(digraphs(max_n=6, max_m=12), st.integers(1, 3))
def test_alpha_matches_enumeration(G, k):
    assert alpha_values(G, k) == brute_alpha(G, k)


@given(digraphs(max_n=5, max_m=10), st.integers(1, 3))
def test_certificate_text_round_trip(G, k):
    cert = optimal_subpartition(solve(G, k))
    again = parse_certificate(format_certificate(cert))
    assert again == cert


def test_parse_certificate_errors():
    with pytest.raises(InputError):
        parse_certificate("k 2\n")
    with pytest.raises(InputError):
        parse_certificate("k 2\nset x 1\ntotal 0\n")
    with pytest.raises(InputError):
        parse_certificate("k 2\nbogus\ntotal 0\n")
