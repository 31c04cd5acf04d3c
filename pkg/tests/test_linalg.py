"""Exact linear algebra: elimination, determinants, Smith form, mod-p certificates."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.linalg import (
    abelian_invariants,
    det_berkowitz,
    kernel_basis,
    mat_identity,
    mat_mul,
    mat_vec,
    modp_invertibility_certificate,
    modp_rank,
    rank,
    rref,
    smith_normal_form,
    solve,
    solve_congruence,
    transpose,
)
from hopfkit.scalar import ring_make

F0, F1 = Fraction(0), Fraction(1)


def fr(rows):
    return [[Fraction(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# Field elimination
# ---------------------------------------------------------------------------

def test_rref_and_rank():
    A = fr([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = rref(A, F0, F1)
    assert pivots == [0, 1]
    assert rank(A, F0, F1) == 2


def test_kernel_annihilates():
    A = fr([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    for v in kernel_basis(A, F0, F1):
        assert all(x == 0 for x in mat_vec(A, v, F0))
    assert len(kernel_basis(A, F0, F1)) == 3 - rank(A, F0, F1)


def test_kernel_of_empty_matrix_is_everything():
    basis = kernel_basis([], F0, F1, ncols=3)
    assert basis == [[F1, F0, F0], [F0, F1, F0], [F0, F0, F1]]


def test_solve_consistent_and_inconsistent():
    A = fr([[1, 1], [1, -1]])
    x = solve(A, [Fraction(3), Fraction(1)], F0, F1)
    assert x == [Fraction(2), Fraction(1)]
    B = fr([[1, 1], [2, 2]])
    assert solve(B, [Fraction(1), Fraction(3)], F0, F1) is None


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                min_size=2, max_size=4),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
@settings(max_examples=50, deadline=None)
def test_solve_recovers_constructed_rhs(rows, xs):
    A = fr(rows)
    x = [Fraction(v) for v in xs]
    b = mat_vec(A, x, F0)
    got = solve(A, b, F0, F1)
    assert got is not None
    assert mat_vec(A, got, F0) == b


# ---------------------------------------------------------------------------
# Berkowitz determinant
# ---------------------------------------------------------------------------

def _det_by_expansion(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _det_by_expansion(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def test_det_berkowitz_frozen():
    assert det_berkowitz(fr([[1, 2], [3, 4]]), F0, F1) == -2
    A = fr([[2, 0, 1], [1, 1, 0], [0, 3, 1]])
    assert det_berkowitz(A, F0, F1) == _det_by_expansion(A)
    assert det_berkowitz([], F0, F1) == F1


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4),
                min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_det_berkowitz_matches_cofactor_expansion(rows):
    A = fr(rows)
    assert det_berkowitz(A, F0, F1) == _det_by_expansion(A)


def test_det_berkowitz_is_division_free_over_polynomials():
    R = ring_make("base=rationals; params=x,y,z")
    x, y, z = (R.sym(n) for n in "xyz")
    vander = [[R.one, x, x * x], [R.one, y, y * y], [R.one, z, z * z]]
    expected = (y - x) * (z - x) * (z - y)
    assert det_berkowitz(vander, R.zero, R.one) == expected


# ---------------------------------------------------------------------------
# Smith normal form and integer lattices
# ---------------------------------------------------------------------------

def _imat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)]
            for row in A]


def _check_snf(A):
    D, U, V = smith_normal_form(A)
    assert _imat_mul(_imat_mul(U, A), V) == D
    m, n = len(A), len(A[0])
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    assert abs(_det_by_expansion(fr(U))) == 1
    assert abs(_det_by_expansion(fr(V))) == 1
    return diag


def test_snf_frozen_example():
    assert _check_snf([[2, 4], [6, 8]]) == [2, 4]
    assert _check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert _check_snf([[0, 0], [0, 0]]) == [0, 0]


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=2, max_size=4))
@settings(max_examples=60, deadline=None)
def test_snf_properties(rows):
    _check_snf(rows)


def test_abelian_invariants():
    assert abelian_invariants([[2, 0], [0, 3]], 2) == ([6], 0)
    assert abelian_invariants([[2, 0]], 2) == ([2], 1)
    assert abelian_invariants([], 3) == ([], 3)
    assert abelian_invariants([[2, 0], [0, 2]], 2) == ([2, 2], 0)


def test_solve_congruence():
    assert solve_congruence([[2]], [1], 4) is None
    x = solve_congruence([[2]], [2], 4)
    assert x is not None and (2 * x[0] - 2) % 4 == 0
    A = [[1, 1], [0, 2]]
    b = [1, 2]
    x = solve_congruence(A, b, 6)
    assert x is not None
    for row, bi in zip(A, b):
        assert (sum(a * v for a, v in zip(row, x)) - bi) % 6 == 0
    # inconsistent over Z/4 even though consistent over Q
    assert solve_congruence([[2, 2], [0, 2]], [1, 0], 4) is None


# ---------------------------------------------------------------------------
# Modular certificates
# ---------------------------------------------------------------------------

def test_modp_rank_agrees_with_exact():
    rows = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    p = 10007
    assert modp_rank(rows, p) == 3
    rows_sing = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert modp_rank(rows_sing, p) == 2


def test_modp_certificate_rationals():
    R = ring_make("base=rationals; params=")
    A = [[R.scalar(1), R.scalar(2)], [R.scalar(3), R.scalar(4)]]
    assert modp_invertibility_certificate(A, R) is True
    S = [[R.scalar(1), R.scalar(2)], [R.scalar(2), R.scalar(4)]]
    assert modp_invertibility_certificate(S, R) is None


def test_modp_certificate_cyclotomic():
    R = ring_make("base=cyclotomic:3; params=")
    q = R.q(1)
    A = [[q, R.zero], [R.one, q * q]]
    assert modp_invertibility_certificate(A, R) is True
    # 1 + q + q^2 = 0 in this field: genuinely singular
    S = [[R.one + q + q * q, R.zero], [R.zero, R.one]]
    assert modp_invertibility_certificate(S, R) is None


def test_modp_certificate_formal_q_is_inconclusive():
    R = ring_make("base=q; params=")
    A = [[R.one, R.zero], [R.zero, R.one]]
    assert modp_invertibility_certificate(A, R) is None


def test_matrix_helpers():
    A = fr([[1, 2], [3, 4]])
    I = mat_identity(2, F0, F1)
    assert mat_mul(A, I, F0) == A
    assert transpose(A) == fr([[1, 3], [2, 4]])
