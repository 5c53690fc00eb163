"""Smith normal form: exact transforms, divisibility chain, cokernel."""

from hypothesis import given, settings
from hypothesis import strategies as st

from pgh.snf import identity_matrix, mat_mul, smith_normal_form, unimodular_inverse


def test_diagonal_of_known_matrix():
    # [DERIVED] worked by hand: d1 = gcd = 2, d1*d2 = |det| = 8, so diag(2, 4)
    res = smith_normal_form([[2, 4], [6, 8]])
    assert res.diagonal == [2, 4]


def test_zero_matrix():
    res = smith_normal_form([[0, 0], [0, 0]])
    assert res.diagonal == []
    assert res.rank == 0


def test_identity_transforms_recover_diagonal():
    m = [[6, 4, 2], [2, 8, 4], [0, 0, 10]]
    res = smith_normal_form(m)
    d = mat_mul(mat_mul(res.U, m), res.V)
    for i in range(3):
        for j in range(3):
            expected = res.diagonal[i] if i == j else 0
            assert d[i][j] == expected


def test_cokernel_of_multiplication_map():
    # Z^2 / <(3,0),(0,12)> = Z_3 x Z_12; torsion sorted non-increasing
    res = smith_normal_form([[3, 0], [0, 12]])
    assert sorted(res.cokernel_torsion(), reverse=True) == [12, 3]
    assert res.cokernel_free_rank() == 0


def test_cokernel_free_rank():
    res = smith_normal_form([[1, 2, 3]], ncols=3)
    assert res.cokernel_free_rank() == 2


def test_unimodular_inverse_roundtrip():
    m = [[1, 2, 0], [0, 1, 5], [0, 0, 1]]
    inv = unimodular_inverse(m)
    assert mat_mul(m, inv) == identity_matrix(3)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-30, 30), min_size=c, max_size=c),
            min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_divisibility_chain(m):
    res = smith_normal_form(m)
    diag = [d for d in res.diagonal if d]
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    assert all(d >= 0 for d in res.diagonal)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_transforms_are_unimodular(m):
    res = smith_normal_form(m)
    for t in (res.U, res.V):
        inv = unimodular_inverse(t)
        assert mat_mul(t, inv) == identity_matrix(len(t))
