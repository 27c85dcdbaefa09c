"""Tiny exact linear solver over Fraction, used for cross-validation oracles."""
from __future__ import annotations

from fractions import Fraction


def solve(matrix, rhs):
    """Solve matrix @ x = rhs exactly by Gaussian elimination.

    matrix is a list of rows of Fractions (square), rhs a list of
    Fractions.  Returns the solution vector, or None when the matrix is
    singular.
    """
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]
