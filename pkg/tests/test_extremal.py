import pytest

from potcycles.errors import PreconditionError
from potcycles.extremal import (
    CLIQUE_CORNER,
    SPLIT_CORNER,
    branch_values,
    extremal_non_3cl_sequence,
    extremal_non_cl_sequences,
    extremal_witnesses,
    non_3cl_indices,
    sigma_csv,
    sigma_potential,
    sigma_table,
    sum_bound,
    sum_bound_poly,
)
from potcycles.oracle import enumerate_graphic_sequences, is_potentially_cl
from potcycles.seqcore import DegreeSequence, check_posa, is_graphic, posa_violation


def S(*terms):
    return DegreeSequence.from_terms(terms)


def test_sigma_examples():
    assert sigma_potential(5, 5).value == 16
    assert sigma_potential(6, 6).value == 24
    assert branch_values(5, 5) == {CLIQUE_CORNER: 14, SPLIT_CORNER: 14}
    assert sigma_potential(5, 5).dominant_branch == CLIQUE_CORNER  # ties go to clique-corner
    assert branch_values(6, 6) == {CLIQUE_CORNER: 22, SPLIT_CORNER: 20}


def test_split_corner_wins_for_l5_beyond_n5():
    for n in range(6, 30):
        q = sigma_potential(5, n)
        assert q.dominant_branch == SPLIT_CORNER and q.value == 4 * n - 6 + 2


@pytest.mark.parametrize("ell, n", [(4, 6), (3, 3), (6, 5)])
def test_sigma_range_errors(ell, n):
    with pytest.raises(PreconditionError):
        sigma_potential(ell, n)


def test_sigma_even_at_least_4_and_monotone():
    for ell in range(5, 16):
        prev = None
        for n in range(ell, 41):
            q = sigma_potential(ell, n)
            assert q.value % 2 == 0 and q.value >= 4
            assert prev is None or q.value >= prev
            prev = q.value


def test_odd_formula_in_the_older_range():
    for m in range(2, 10):
        for n in range(3 * m, 3 * m + 30):
            if n >= 2 * m + 1:
                assert sigma_potential(2 * m + 1, n).value == m * (2 * n - m - 1) + 2


def test_sharpness_template_examples():
    assert extremal_non_3cl_sequence(6, 1, 7) == S(6, 4, 4, 3, 3, 1, 1)
    assert extremal_non_3cl_sequence(7, 1, 8) == S(7, 5, 5, 5, 4, 4, 1, 1)


def test_sharpness_templates_fail_posa_by_one():
    for ell in range(5, 14):
        for i in non_3cl_indices(ell):
            for n in range(ell, ell + 8):
                seq = extremal_non_3cl_sequence(ell, i, n)
                assert is_graphic(seq) and not check_posa(seq, ell)
                assert posa_violation(seq, ell) == i and seq.d(ell + 1 - i) == i


def test_sharpness_template_errors():
    with pytest.raises(PreconditionError):
        extremal_non_3cl_sequence(6, 3, 8)  # i beyond ceil(l/2) - 1
    with pytest.raises(PreconditionError):
        extremal_non_3cl_sequence(6, 1, 4)  # negative run length
    with pytest.raises(PreconditionError):
        extremal_non_3cl_sequence(4, 1, 8)


def test_non_cl_examples():
    assert S(4, 3, 3, 3, 1) in extremal_non_cl_sequences(5, 5)
    assert S(5, 5, 2, 2, 2, 2) in extremal_non_cl_sequences(5, 6)
    assert sigma_potential(5, 6).value == 20


def test_non_cl_witnesses_hit_their_branch():
    for ell in range(5, 14):
        for n in range(ell, ell + 10):
            vals = branch_values(ell, n)
            for branch, seq in extremal_witnesses(ell, n):
                assert seq.n == n and seq.in_ns() and is_graphic(seq)
                assert seq.sigma == vals[branch]
            q = sigma_potential(ell, n)
            assert max(s.sigma for s in extremal_non_cl_sequences(ell, n)) == q.value - 2


def test_non_cl_witnesses_refuted_by_oracle():
    for ell in (5, 6):
        for n in range(ell, 9):
            for seq in extremal_non_cl_sequences(ell, n):
                assert not is_potentially_cl(seq, ell).verdict


def test_sum_bound_examples():
    seq = S(4, 4, 2, 2, 2)
    assert sum_bound_poly(5, 5, 1) == 14
    assert sum_bound(seq, 5, 2) == 14
    with pytest.raises(PreconditionError):
        sum_bound(seq, 5, 3)
    with pytest.raises(PreconditionError):
        sum_bound(seq, 5, 0)
    with pytest.raises(PreconditionError):
        sum_bound(seq, 5, 1)  # d_5 = 2 > 1, bound does not apply


def test_sum_bound_endpoints_give_sigma():
    for ell in range(5, 16):
        m = (ell - 1) // 2 if ell % 2 else (ell - 2) // 2
        for n in range(ell, 40):
            top = max(sum_bound_poly(ell, n, 1), sum_bound_poly(ell, n, m))
            assert top == sigma_potential(ell, n).value - 2
            # convex in k, so the endpoints dominate
            assert all(sum_bound_poly(ell, n, k) <= top for k in range(1, m + 1))


def test_sum_bound_holds_exhaustively():
    for n in range(5, 9):
        for seq in enumerate_graphic_sequences(n):
            for ell in range(5, n + 1):
                m = (ell - 1) // 2 if ell % 2 else (ell - 2) // 2
                for k in range(1, m + 1):
                    if seq.d(ell + 1 - k) <= k:
                        assert seq.sigma <= sum_bound(seq, ell, k)


def test_sigma_table_csv():
    rows = sigma_table([6], range(6, 11))
    text = sigma_csv(rows)
    assert text.splitlines()[0] == "l,n,sigma,branch"
    assert len(text.splitlines()) == 6
    assert text.splitlines()[1] == "6,6,24,clique-corner"
