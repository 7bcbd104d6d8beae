import hashlib
from itertools import combinations

import pytest
from hypothesis import given

from potcycles.errors import CapExceeded
from potcycles.graphcore import SimpleGraph, cycle_lengths, degree_sequence
from potcycles.oracle import (
    brute_force_graphic,
    count_realizations,
    enumerate_graphic_sequences,
    enumerate_realizations,
    enumerate_sequences,
    is_potentially_3cl,
    is_potentially_cl,
    merge_results,
    spectrum,
)
from potcycles.seqcore import DegreeSequence, check_posa, is_graphic, parse_sequence
from strategies import graphs, ns_sequences


def S(*terms):
    return DegreeSequence.from_terms(terms)


def labeled_count(seq):
    """Count labeled realizations by scanning every edge subset (n <= 5)."""
    n = seq.n
    pairs = list(combinations(range(1, n + 1), 2))
    m = seq.sigma // 2
    return sum(1 for chosen in combinations(pairs, m)
               if SimpleGraph.from_edges(n, chosen).degrees()[1:] == list(seq.terms))


@pytest.mark.parametrize("seq, count", [(S(2, 2, 2), 1), (S(1, 1, 1, 1), 3), (S(2, 2, 2, 2), 3)])
def test_realization_counts(seq, count):
    assert count_realizations(seq) == count
    assert count_realizations(seq, prune="basic") == count


@given(ns_sequences(max_n=5))
def test_counts_match_edge_subset_scan(seq):
    if seq.sigma % 2:
        return
    assert count_realizations(seq) == labeled_count(seq)


def test_realizations_are_distinct_and_stable():
    seq = parse_sequence("3^4,2^2")

    def digest():
        h = hashlib.sha256()
        graphs_ = list(enumerate_realizations(seq))
        for g in graphs_:
            h.update(repr(g.sorted_edges()).encode())
        return len(graphs_), len({g.edges for g in graphs_}), h.hexdigest()

    first = digest()
    assert first[0] == first[1]
    assert digest() == first
    for g in enumerate_realizations(seq):
        assert g.degrees()[1:] == list(seq.terms)


def test_cap_is_a_refusal():
    with pytest.raises(CapExceeded):
        list(enumerate_realizations(S(*[2] * 11)))
    with pytest.raises(CapExceeded):
        is_potentially_cl(S(*[2] * 11), 5, cap=10)
    assert count_realizations(S(*[1] * 4), cap=4) == 3


@pytest.mark.parametrize("seq, ell, verdict", [
    (S(4, 4, 2, 2, 2), 5, False),
    (S(2, 2, 2, 2, 2), 5, True),
    (parse_sequence("4^4,3^2,2^2"), 8, True),
])
def test_potentially_cl_examples(seq, ell, verdict):
    res = is_potentially_cl(seq, ell)
    assert res.verdict is verdict
    if verdict:
        assert degree_sequence(res.witness) == seq and ell in cycle_lengths(res.witness)
    else:
        assert res.witness is None and res.realizations_examined == count_realizations(seq)


@pytest.mark.parametrize("seq, ell, verdict", [
    (S(6, 4, 4, 3, 3, 1, 1), 6, False),
    (parse_sequence("4^4,3^2,2^2"), 8, True),
    (S(2, 2, 2), 3, True),
])
def test_potentially_3cl_examples(seq, ell, verdict):
    res = is_potentially_3cl(seq, ell)
    assert res.verdict is verdict
    if verdict:
        assert set(range(3, ell + 1)) <= cycle_lengths(res.witness)
    else:
        assert res.realizations_examined == count_realizations(seq)


def test_result_serializes():
    d = is_potentially_cl(S(2, 2, 2, 2, 2), 5).to_dict()
    assert d["verdict"] is True and d["l"] == 5 and len(d["witness_edges"]) == 5


def test_chunked_runs_merge_to_the_single_run():
    for text, ell in [("3^6", 6), ("4^4,3^2,2^2", 8), ("3^4,2^4", 8), ("4,4,2,2,2", 5)]:
        seq = parse_sequence(text)
        whole = is_potentially_3cl(seq, ell)
        for k in (2, 3, 5):
            merged = merge_results([is_potentially_3cl(seq, ell, chunk=(i, k)) for i in range(k)])
            assert merged.verdict == whole.verdict
            assert merged.witness == whole.witness
            if not whole.verdict:
                assert merged.realizations_examined == whole.realizations_examined


def test_chunks_partition_the_realizations():
    seq = parse_sequence("3^4,2^3")
    whole = {g.edges for g in enumerate_realizations(seq)}
    parts = [{g.edges for g in enumerate_realizations(seq, chunk=(i, 3))} for i in range(3)]
    assert sum(map(len, parts)) == len(whole) and set().union(*parts) == whole


def test_enumerate_sequences_order_and_size():
    seqs = list(enumerate_sequences(3))
    assert seqs[0] == S(0, 0, 0) and seqs[-1] == S(2, 2, 2)
    assert len(seqs) == 10  # multisets of size 3 from {0,1,2}
    with pytest.raises(CapExceeded):
        next(enumerate_sequences(14))


def test_enumerate_graphic_sequences_examples():
    assert list(enumerate_graphic_sequences(3)) == [S(0, 0, 0), S(1, 1, 0), S(2, 1, 1), S(2, 2, 2)]
    posa5 = list(enumerate_graphic_sequences(5, lambda s: check_posa(s, 5)))
    assert S(4, 3, 3, 3, 3) in posa5 and S(3, 3, 3, 2, 2) not in posa5
    dense = list(enumerate_graphic_sequences(5, lambda s: s.sigma >= 16))
    assert dense and all(is_potentially_cl(s, 5).verdict for s in dense)


def test_graphic_iff_some_realization():
    for n in range(1, 7):
        for seq in enumerate_sequences(n):
            if seq.sigma % 2:
                continue
            assert is_graphic(seq) == brute_force_graphic(seq).verdict
            assert is_graphic(seq) == (count_realizations(seq, prune="basic") > 0)


@given(graphs(max_n=8))
def test_spectrum_matches_graphcore(g):
    assert spectrum(g) == cycle_lengths(g)
