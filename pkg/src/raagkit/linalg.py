"""Exact integer matrix helpers (nested tuples, no floating point)."""
from __future__ import annotations

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _bareiss(rows):
    """Fraction-free forward elimination; returns (rank, sign-adjusted last pivot)."""
    m = [list(r) for r in rows]
    if not m:
        return 0, 1
    nrows, ncols = len(m), len(m[0])
    rank, prev, sign = 0, 1, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            sign = -sign
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            for c in range(col, ncols):
                # exact division is guaranteed by Sylvester's identity
                m[r][c] = (p * m[r][c] - f * m[rank][c]) // prev
        prev = p
        rank += 1
    return rank, sign * prev


def rank(rows) -> int:
    return _bareiss(rows)[0]


def det(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    r, d = _bareiss(rows)
    return d if r == n else 0
