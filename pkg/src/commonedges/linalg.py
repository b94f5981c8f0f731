"""Exact integer and rational linear algebra on lists of lists."""

from __future__ import annotations

from fractions import Fraction


def bareiss_det(matrix: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    Every intermediate division is exact, so entries stay integers no
    larger than minors of the input. The input is not modified.
    """
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def adjugate_scaled_inverse(matrix: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Return ``(d, B)`` with ``A^{-1} = B / d`` and all entries integers.

    Fraction-free Gauss-Jordan on ``[A | I]``: after the last step the left
    block is ``d * I`` where ``d = +-det(A)``. Raises ``ZeroDivisionError``
    when ``A`` is singular.
    """
    n = len(matrix)
    a = [list(map(int, row)) + [int(i == j) for j in range(n)]
         for i, row in enumerate(matrix)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise ZeroDivisionError("matrix is singular")
        pivot = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            factor = row_i[k]
            a[i] = [(x * pivot - factor * y) // prev for x, y in zip(row_i, row_k)]
        prev = pivot
    d = a[0][0]
    assert all(a[i][i] == d for i in range(n))
    return d, [row[n:width] for row in a]


def rational_inverse(matrix: list[list[int]]) -> list[list[Fraction]]:
    """Exact inverse of an integer matrix as Fractions."""
    d, b = adjugate_scaled_inverse(matrix)
    return [[Fraction(x, d) for x in row] for row in b]
