"""Exact Gauss-Jordan elimination over Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularSystem


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a possibly over-determined system exactly.

    Raises SingularSystem when the columns are rank deficient or when an
    extra equation contradicts the others.
    """
    if len(rows) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    if not rows:
        raise SingularSystem("empty system")
    ncols = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(aug)) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"column {col} is not determined by the samples")
        aug[pivot_row], aug[pivot] = aug[pivot], aug[pivot_row]
        lead = aug[pivot_row][col]
        aug[pivot_row] = [v / lead for v in aug[pivot_row]]
        for r in range(len(aug)):
            if r != pivot_row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
    for r in range(pivot_row, len(aug)):
        if aug[r][-1] != 0:
            raise SingularSystem("samples are inconsistent with a single solution")
    return [aug[r][-1] for r in range(ncols)]


def is_positive_definite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Symmetric positive definiteness via pivot signs of unpivoted elimination."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    for i in range(n):
        if a[i][i] <= 0:
            return False
        for r in range(i + 1, n):
            factor = a[r][i] / a[i][i]
            for c in range(i, n):
                a[r][c] -= factor * a[i][c]
    return True
