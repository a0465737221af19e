"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples. Every function returns fresh values and
never mutates its arguments. Integer routines use Python ints; rational
routines use :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    if not M:
        return (0, 0)
    return (len(M), len(M[0]))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> Matrix:
    if not M:
        return ()
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if not A:
        return ()
    inner = len(B)
    cols = len(B[0]) if B else 0
    if len(A[0]) != inner:
        raise ValueError("shape mismatch in matmul")
    Bt = transpose(B) if B else tuple(() for _ in range(cols))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def det(M: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination.

    Integer input gives an int; rational input gives a Fraction.
    """
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in M for x in r):
        return _det_rational(M)
    A = [[int(x) for x in r] for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _det_rational(M):
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            result = -result
        result *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return result


def row_echelon(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(row_echelon(M)[1])


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Return some x with A x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the returned solution is supported on
    the pivot columns. With full column rank it is the unique solution.
    """
    m = len(A)
    if m != len(b):
        raise ValueError("right-hand side length does not match row count")
    n = len(A[0]) if m else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = row_echelon(aug) if m else ([], [])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return tuple(x)


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def nullspace(M: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of {x : M x = 0} over Q."""
    if not M:
        return []
    n = len(M[0])
    R, pivots = row_echelon(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return basis


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# -- integer normal forms ---------------------------------------------------


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and H = U M upper echelon: pivots are
    positive and entries above a pivot lie in [0, pivot).
    """
    m, n = shape(M)
    H = [[int(x) for x in row] for row in M]
    U = [list(r) for r in identity(m)]
    p = 0
    for c in range(n):
        if p == m:
            break
        while True:
            nz = [i for i in range(p, m) if H[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(H[i][c]))
            if k != p:
                H[p], H[k] = H[k], H[p]
                U[p], U[k] = U[k], U[p]
            done = True
            for i in range(p + 1, m):
                if H[i][c]:
                    f = H[i][c] // H[p][c]
                    H[i] = [a - f * b for a, b in zip(H[i], H[p])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[p])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[p][c] == 0:
            continue
        if H[p][c] < 0:
            H[p] = [-a for a in H[p]]
            U[p] = [-a for a in U[p]]
        piv = H[p][c]
        for i in range(p):
            f = H[i][c] // piv
            if f:
                H[i] = [a - f * b for a, b in zip(H[i], H[p])]
                U[i] = [a - f * b for a, b in zip(U[i], U[p])]
        p += 1
    return as_matrix(H), as_matrix(U)


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form D = U M V with d_1 | d_2 | ... and U, V unimodular."""
    D, U, V, _ = _smith(M)
    return D, U, V


def _smith(M):
    """Smith form plus the inverse of V (needed for saturation)."""
    m, n = shape(M)
    A = [[int(x) for x in row] for row in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]
    Vinv = [list(r) for r in identity(n)]

    def row_op(i, j, f):  # row_i -= f * row_j
        A[i] = [a - f * b for a, b in zip(A[i], A[j])]
        U[i] = [a - f * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for row in A:
            row[i] -= f * row[j]
        for row in V:
            row[i] -= f * row[j]
        # V' = V E with E = I - f e_j e_i^T, so V'^-1 = (I + f e_j e_i^T) V^-1
        Vinv[j] = [a + f * b for a, b in zip(Vinv[j], Vinv[i])]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row up so the next pass shrinks the pivot
            row_op(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return as_matrix(A), as_matrix(U), as_matrix(V), as_matrix(Vinv)


def invariant_factors(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    D = smith_normal_form(M)[0]
    return tuple(D[i][i] for i in range(min(shape(M))) if D[i][i] != 0)


def saturation_basis(vectors: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Basis of span_Q(vectors) intersected with Z^n, in Hermite normal form."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if not vectors:
        return ()
    D, _, _, Vinv = _smith(vectors)
    r = sum(1 for i in range(min(shape(D))) if D[i][i] != 0)
    if r == 0:
        return ()
    # A = U^-1 D V^-1, so the row space is spanned by the first r rows of V^-1,
    # which extend to a unimodular matrix and hence span a saturated lattice.
    H, _ = hermite_normal_form(Vinv[:r])
    return tuple(row for row in H if any(row))


def integer_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of v in a lattice basis; raises if v is not in the lattice."""
    x = solve_rational(transpose(basis), tuple(v))
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError(f"{tuple(v)} is not in the lattice spanned by the basis")
    return tuple(int(c) for c in x)
