"""Exact linear algebra over the Gaussian rationals and over jet rings."""
from __future__ import annotations

from functools import lru_cache

from .errors import NotAUnit
from .gaussian import as_gaussian

__all__ = ["rank", "pivot_columns", "det", "adjugate", "inverse", "solve_row"]


def _echelon(rows):
    """Row-reduce a copy of ``rows``; return (reduced rows, pivot columns)."""
    m = [[as_gaussian(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    """Exact rank of a Gaussian-rational matrix (no thresholds)."""
    return len(_echelon(rows)[1])


def pivot_columns(rows):
    """Columns of a maximal independent column set, chosen left to right."""
    return _echelon(rows)[1]


def det(matrix):
    """Determinant by Laplace expansion along rows, memoized on column sets.

    Works for any commutative ring whose elements support ``+ - *``.  For jet
    entries the result is capped at the smallest entry order, since skipped
    zero entries still carry an order.
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n - 1:
            return matrix[row][cols[0]]
        total = None
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if _is_zero(entry):
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return matrix[row][cols[0]] * 0
        return total

    return _cap(minor(0, tuple(range(n))), [x for row in matrix for x in row])


def _cap(value, entries):
    orders = [x.order for x in entries if hasattr(x, "order")]
    if orders and hasattr(value, "with_order"):
        return value.with_order(min(orders))
    return value


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else not x


def adjugate(matrix):
    n = len(matrix)
    if n == 1:
        return [[matrix[0][0] * 0 + 1]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [row[:j] + row[j + 1:] for k, row in enumerate(matrix) if k != i]
            c = det(sub)
            adj[j][i] = -c if (i + j) % 2 else c
    return adj


def inverse(matrix, invert):
    """Inverse via adjugate / determinant; ``invert`` inverts the determinant."""
    d = det(matrix)
    try:
        dinv = invert(d)
    except (NotAUnit, ZeroDivisionError) as exc:
        raise NotAUnit("matrix determinant is not invertible") from exc
    return [[entry * dinv for entry in row] for row in adjugate(matrix)]


def solve_row(vector, inv):
    """Row vector ``c`` with ``c * M = vector`` given ``inv = M^-1``."""
    n = len(inv)
    out = []
    for j in range(n):
        total = None
        for i in range(n):
            if _is_zero(vector[i]) or _is_zero(inv[i][j]):
                continue
            term = vector[i] * inv[i][j]
            total = term if total is None else total + term
        out.append(total if total is not None else vector[0] * 0)
    entries = list(vector) + [x for row in inv for x in row]
    return [_cap(x, entries) for x in out]


def gaussian_matrix_str(rows):
    return "[" + "; ".join(", ".join(str(as_gaussian(x)) for x in row) for row in rows) + "]"

