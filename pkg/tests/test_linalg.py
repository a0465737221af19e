from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weighted_ehrhart import linalg

small = st.integers(-9, 9)


def int_matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def gram_det(A):
    A = sympy.Matrix([list(r) for r in A])
    return int((A * A.T).det())


def minors_gcd(M, k):
    g = 0
    m, n = len(M), len(M[0])
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            g = gcd(g, int(sympy.Matrix([[M[i][j] for j in cols] for i in rows]).det()))
    return g


def test_det_known_values():
    assert linalg.det([[2, 1], [1, 3]]) == 5
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.det([[Fraction(1, 2), 0], [0, 4]]) == 2
    assert linalg.det([[1, 2], [2, 4]]) == 0


def test_hnf_and_snf_examples():
    H, U = linalg.hermite_normal_form([[2, 4], [0, 3]])
    assert H == ((2, 1), (0, 3))
    D, U, V = linalg.smith_normal_form([[4, 0], [0, 6]])
    assert D == ((2, 0), (0, 12))


def test_saturation_of_scaled_vector():
    assert linalg.saturation_basis([(2, 4)]) == ((1, 2),)


def test_inverse_and_solve():
    A = [[2, 1], [1, 1]]
    assert linalg.matmul(A, linalg.inverse(A)) == linalg.identity(2)
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])
    assert linalg.solve_rational([[1, 1], [1, -1]], [3, 1]) == (2, 1)
    assert linalg.solve_rational([[1, 1], [1, 1]], [1, 2]) is None


def test_nullspace_is_annihilated():
    M = [[1, 2, 3], [2, 4, 6]]
    ns = linalg.nullspace(M)
    assert len(ns) == 2
    for v in ns:
        assert linalg.matvec(M, v) == (0, 0)


def test_integer_coordinates_rejects_non_members():
    with pytest.raises(ValueError):
        linalg.integer_coordinates([(2, 0), (0, 2)], (1, 0))
    assert linalg.integer_coordinates([(2, 0), (0, 2)], (4, -2)) == (2, -1)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_hnf_properties(M):
    H, U = linalg.hermite_normal_form(M)
    assert linalg.matmul(U, M) == H
    assert abs(linalg.det(U)) == 1
    # echelon with positive pivots and reduced entries above them
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in H[i:])
            break
        j = nz[0]
        assert j > last and row[j] > 0
        assert all(0 <= H[k][j] < row[j] for k in range(i))
        last = j
    assert sympy.Matrix(H).rank() == sympy.Matrix(M).rank()


@settings(max_examples=60, deadline=None)
@given(int_matrices(5, 5))
def test_snf_properties(M):
    D, U, V = linalg.smith_normal_form(M)
    assert linalg.matmul(linalg.matmul(U, M), V) == D
    assert abs(linalg.det(U)) == 1 and abs(linalg.det(V)) == 1
    m, n = len(M), len(M[0])
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert diag[: len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    r = len(nonzero)
    prod = 1
    for x in nonzero:
        prod *= x
    if r:
        assert prod == minors_gcd(M, r)
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    theirs = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    assert sorted(abs(int(theirs[i, i])) for i in range(min(m, n))) == sorted(diag)


@settings(max_examples=60, deadline=None)
@given(int_matrices(4, 5))
def test_saturation_basis_properties(vectors):
    B = linalg.saturation_basis(vectors)
    r = linalg.rank(vectors)
    assert len(B) == r
    if not B:
        return
    for v in vectors:
        linalg.integer_coordinates(B, v)  # raises unless v is an integer combination
    # saturated: the gcd of maximal minors of B is 1
    assert minors_gcd([list(b) for b in B], r) == 1
    # the Gram determinant of B divides that of any integer spanning set
    ind = [vectors[i] for i in linalg.row_echelon(linalg.transpose(vectors))[1]]
    assert gram_det(ind) % gram_det(B) == 0
