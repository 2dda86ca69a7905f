"""Small exact matrix helpers over ``Fraction`` (tuples of tuples)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> Matrix:
    return tuple(tuple(Fraction(x) * y for y in v) for x in u)


def scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def _echelon(a: Matrix) -> tuple[list[list[Fraction]], list[int], int]:
    """Row-reduce a copy; returns (rows, pivot columns, sign of row swaps)."""
    rows = [list(r) for r in a]
    pivots: list[int] = []
    sign = 1
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f /= p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, sign


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(_echelon(a)[1])


def det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    rows, pivots, sign = _echelon(a)
    if len(pivots) < n:
        return Fraction(0)
    out = Fraction(sign)
    for i in range(n):
        out *= rows[i][i]
    return out


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ``ValueError`` on singular input."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : a x = 0}."""
    if not a:
        return []
    ncols = len(a[0])
    rows, pivots, _ = _echelon(a)
    # back-substitute to reduced echelon form
    rows = rows[: len(pivots)]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        p = rows[k][c]
        rows[k] = [x / p for x in rows[k]]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -rows[k][fc]
        basis.append(tuple(v))
    return basis
