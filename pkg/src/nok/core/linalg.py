"""Small exact linear algebra over the rationals.

Matrices are lists of lists of Fractions (or ints); the sizes involved are the
Picard number or the size of a negative support, so plain Gaussian
elimination is the right tool.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _copy(m: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def solve(m: Matrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``m x = rhs``; return None when m is singular."""
    n = len(m)
    a = _copy(m)
    b = [Fraction(x) for x in rhs]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                row_r, row_c = a[r], a[col]
                for k in range(col, n):
                    row_r[k] -= f * row_c[k]
                b[r] -= f * b[col]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = b[i] - sum(a[i][k] * x[k] for k in range(i + 1, n))
        x[i] = s / a[i][i]
    return x


def inverse(m: Matrix) -> list[list[Fraction]] | None:
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        c = solve(m, e)
        if c is None:
            return None
        cols.append(c)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def congruence_diagonal(m: Matrix) -> list[Fraction]:
    """Diagonal of a congruent diagonalisation of the symmetric matrix m.

    Symmetric elimination with pivoting: a non-zero diagonal entry is used
    when available, otherwise an off-diagonal entry a_ij is moved onto the
    diagonal by the congruence e_i -> e_i + e_j.
    """
    a = _copy(m)
    n = len(a)
    diag: list[Fraction] = []
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active
                         if i < j and a[i][j] != 0), None)
            if pair is None:
                diag.extend(Fraction(0) for _ in active)
                break
            i, j = pair
            # row/col i += row/col j
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        diag.append(p)
        active.remove(piv)
        for r in active:
            f = a[r][piv] / p
            if f:
                for c in active:
                    a[r][c] -= f * a[piv][c]
        for r in active:
            a[r][piv] = a[piv][r] = Fraction(0)
    return diag


def signature(m: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of the symmetric matrix m."""
    d = congruence_diagonal(m)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0),
            sum(1 for x in d if x == 0))


def is_negative_definite(m: Matrix) -> bool:
    """Sylvester test run as an LDL^T factorisation of -m (all pivots > 0)."""
    n = len(m)
    a = [[-Fraction(x) for x in row] for row in m]
    for k in range(n):
        p = a[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return True
