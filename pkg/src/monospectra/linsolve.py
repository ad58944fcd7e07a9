"""Exact Gaussian elimination for small overdetermined rational systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numbers import to_fraction


@dataclass(frozen=True)
class LinearSolveResult:
    solution: tuple  # length-n Fractions (free variables set to 0)
    consistent: bool
    rank: int
    violated_row: int | None  # first original equation index that fails


def solve_linear(matrix, rhs) -> LinearSolveResult:
    """Solve an m x n rational system exactly, m >= n >= 1.

    Elimination runs over exact Fractions (float entries are converted via
    their binary expansion).  ``consistent`` is true iff rhs lies in the
    column space; the solution is the unique one when rank == n and the
    system is consistent, and otherwise the pivot-row solution with free
    variables at zero, which is what residual reporting is based on.
    """
    m = len(matrix)
    if m == 0:
        raise ValueError("empty system")
    n = len(matrix[0])
    if not all(len(row) == n for row in matrix):
        raise ValueError("ragged matrix")
    if len(rhs) != m:
        raise ValueError("rhs length does not match row count")
    if not (m >= n >= 1):
        raise ValueError("solve_linear requires m >= n >= 1")

    a = [[to_fraction(v) for v in row] for row in matrix]
    b = [to_fraction(v) for v in rhs]
    rows = list(range(m))  # rows[i] = original index of working row i

    rank = 0
    pivot_cols = []
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        b[rank], b[pivot] = b[pivot], b[rank]
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = a[rank][col]
        for r in range(rank + 1, m):
            if a[r][col] == 0:
                continue
            f = a[r][col] / pv
            for c in range(col, n):
                a[r][c] -= f * a[rank][c]
            b[r] -= f * b[rank]
        pivot_cols.append(col)
        rank += 1
        if rank == n:
            break

    x = [Fraction(0)] * n
    for i in range(rank - 1, -1, -1):
        col = pivot_cols[i]
        s = b[i]
        for c in range(col + 1, n):
            s -= a[i][c] * x[c]
        x[col] = s / a[i][col]

    violated = None
    orig_a = [[to_fraction(v) for v in row] for row in matrix]
    orig_b = [to_fraction(v) for v in rhs]
    for i in range(m):
        lhs = sum(orig_a[i][c] * x[c] for c in range(n))
        if lhs != orig_b[i]:
            violated = i
            break

    return LinearSolveResult(
        solution=tuple(x),
        consistent=violated is None,
        rank=rank,
        violated_row=violated,
    )
