import networkx as nx
import pytest
from hypothesis import given

from potcycles.errors import PreconditionError, SequenceFormatError
from potcycles.oracle import enumerate_sequences
from potcycles.seqcore import (
    DegreeSequence,
    check_dirac,
    check_posa,
    f_index,
    is_graphic,
    is_graphic_full,
    lay_off,
    lay_off_positions,
    parse_sequence,
    posa_violation,
    render_sequence,
)
from strategies import ns_sequences


def S(*terms):
    return DegreeSequence.from_terms(terms)


# parsing and rendering

@pytest.mark.parametrize("text, terms", [
    ("4^4,3^2,2^2", (4, 4, 4, 4, 3, 3, 2, 2)),
    ("0", (0,)),
    ("2,4,3", (4, 3, 2)),
    (" (6, 4^2 ,3^2, 1^2) ", (6, 4, 4, 3, 3, 1, 1)),
])
def test_parse_examples(text, terms):
    assert parse_sequence(text).terms == terms


@pytest.mark.parametrize("text", ["", "  ", "3,-1", "a", "3^0", "3^", "3,,2", "2^-1"])
def test_parse_rejects(text):
    with pytest.raises(SequenceFormatError):
        parse_sequence(text)


def test_render_runs_in_decreasing_order():
    assert render_sequence(S(2, 4, 4, 3, 2, 2)) == "4^2,3,2^3"
    assert str(parse_sequence("6,4^5,2^2")) == "6,4^5,2^2"


@given(ns_sequences(max_n=12))
def test_parse_render_round_trip(seq):
    assert parse_sequence(render_sequence(seq)) == seq


def test_sequence_invariants():
    with pytest.raises(ValueError):
        DegreeSequence((1, 2))
    with pytest.raises(ValueError):
        DegreeSequence((1, -1))
    s = S(4, 4, 4, 4, 3, 3, 2, 2)
    assert (s.n, s.sigma, s.even, s.d(1), s.d(8)) == (8, 26, True, 4, 2)
    assert S(2, 1, 1).in_ns() and not S(3, 1, 1).in_ns()


# f(pi) and graphicality

@pytest.mark.parametrize("seq, expected", [
    (S(4, 4, 4, 4, 3, 3, 2, 2), 4),
    (S(0, 0, 0), 0),
    (S(4, 4, 4, 4, 4), 4),
])
def test_f_index(seq, expected):
    assert f_index(seq) == expected


@pytest.mark.parametrize("seq, expected", [
    (S(4, 4, 4, 4, 3, 3, 2, 2), True),
    (S(1, 1), True),
    (S(3, 3, 1, 1), False),
    (S(3, 3, 3, 2, 2), False),  # odd sum
    (S(5, 1, 1, 1), False),     # d_1 > n - 1
    (S(0, 0, 0), True),
])
def test_is_graphic_examples(seq, expected):
    assert is_graphic(seq) is expected
    assert is_graphic_full(seq) is expected


def test_cutoff_agrees_with_full_test_exhaustively():
    for n in range(1, 9):
        for seq in enumerate_sequences(n):
            assert is_graphic(seq) == is_graphic_full(seq), seq


@given(ns_sequences(max_n=14))
def test_is_graphic_matches_networkx(seq):
    assert is_graphic(seq) == nx.is_graphical(list(seq.terms), method="hh")


# laying off

@pytest.mark.parametrize("seq, k, expected", [
    (S(3, 3, 2, 2, 2), 1, S(2, 2, 1, 1)),
    (S(2, 2, 2), 3, S(1, 1)),
    (S(4, 4, 4, 4, 3, 3, 2, 2), 8, S(4, 4, 3, 3, 3, 3, 2)),
])
def test_lay_off_examples(seq, k, expected):
    assert lay_off(seq, k) == expected
    assert is_graphic(seq) and is_graphic(expected)


def test_lay_off_tie_break_is_leftmost():
    assert lay_off_positions(S(3, 2, 2, 2, 1), 5) == [1]
    assert lay_off_positions(S(2, 2, 2, 2), 3) == [1, 2]


def test_lay_off_errors():
    with pytest.raises(PreconditionError):
        lay_off(S(2, 2, 2), 4)
    with pytest.raises(PreconditionError):
        lay_off(DegreeSequence((3, 1)), 1)
    with pytest.raises(PreconditionError):
        lay_off(S(1, 0, 0), 1)  # would decrement a zero


@given(ns_sequences(max_n=9))
def test_lay_off_preserves_graphicality(seq):
    if not is_graphic(seq):
        return
    for k in range(1, seq.n + 1):
        assert is_graphic(lay_off(seq, k))


# degree conditions

def test_posa_examples():
    assert check_posa(S(4, 3, 3, 3, 2, 1), 5)
    assert check_posa(S(4, 4, 4, 4, 4, 4, 3, 2, 1), 8)
    assert not check_posa(S(5, 5, 3, 3, 2, 2), 6)
    assert posa_violation(S(5, 5, 3, 3, 2, 2), 6) == 2
    assert posa_violation(S(6, 4, 4, 3, 3, 1, 1), 6) == 1


def test_dirac_examples():
    assert check_dirac(S(3, 3, 3, 3, 3, 3), 6)
    assert not check_dirac(S(4, 3, 3, 3, 2), 5)


@pytest.mark.parametrize("fn", [check_posa, check_dirac])
def test_condition_ranges(fn):
    with pytest.raises(PreconditionError):
        fn(S(2, 2, 2, 2), 4)
    with pytest.raises(PreconditionError):
        fn(S(2, 2, 2, 2, 2), 6)


@given(ns_sequences(min_n=5, max_n=12))
def test_dirac_implies_posa(seq):
    for ell in range(5, seq.n + 1):
        if check_dirac(seq, ell):
            assert check_posa(seq, ell)
