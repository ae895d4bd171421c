"""Dense matrices over exact fields (CycNum or Fraction), as lists of rows."""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import CycNum

Matrix = list[list]


def identity(k: int, n: int = 1) -> Matrix:
    one, zero = CycNum.rational(1, n), CycNum.rational(0, n)
    return [[one if i == j else zero for j in range(k)] for i in range(k)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if not _is_zero(x) and not _is_zero(y):
                    s = x * y + s
            if isinstance(s, int) and row:
                s = row[0] * 0
            out_row.append(s)
        out.append(out_row)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in r] for r in a]


def kron(a: Matrix, b: Matrix) -> Matrix:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def block_diag(*blocks: Matrix) -> Matrix:
    size = sum(len(b) for b in blocks)
    zero = blocks[0][0][0] * 0
    out = [[zero] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def conjugate(a: Matrix) -> Matrix:
    return [[x.conjugate() if isinstance(x, CycNum) else x for x in r] for r in a]


def trace(a: Matrix):
    s = 0
    for i in range(len(a)):
        s = a[i][i] + s
    return s


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNum) else x == 0


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    pivots = []
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not _is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(row_echelon(a)[1])


def column_basis(a: Matrix) -> Matrix:
    """Independent columns of ``a`` spanning its column space (as a matrix)."""
    if not a:
        return []
    _, pivots = row_echelon(a)
    return [[row[c] for c in pivots] for row in a]


def det(a: Matrix):
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    result = 1
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if p is None:
            return 0 * m[0][0]
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = piv * result
        inv = 1 / piv
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def solve_left_basis(basis: Matrix, target: Matrix) -> Matrix:
    """Solve basis @ X = target for X, where ``basis`` has independent columns
    and the columns of ``target`` lie in its span."""
    k = len(basis[0]) if basis else 0
    aug = [list(b) + list(t) for b, t in zip(basis, target)]
    red, pivots = row_echelon(aug)
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ArithmeticError("target is not in the column span of the basis")
    return [row[k:] for row in red[:k]]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*a)]
