"""Small exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


class InconsistentSystem(ValueError):
    pass


def solve(A, b):
    """Unique solution x of A x = b (A may be tall); raises if none or not unique."""
    ncols = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("system has no solution")
    if len(pivots) < ncols:
        raise ValueError("solution is not unique")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][-1]
    return x
