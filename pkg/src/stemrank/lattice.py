"""Sublattices of Z^r in row Hermite normal form.

The HNF basis is canonical, so lattice equality is tuple equality.  Pivots
are positive and entries above a pivot are reduced into [0, pivot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

IntMat = list[list[int]]


@dataclass(frozen=True)
class Lattice:
    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_pivot(r) for r in self.basis)

    def __contains__(self, x) -> bool:
        return member(self, x)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice":
        return span(obj["basis"], int(obj["ambient"]))

    def __repr__(self):
        return f"Lattice({self.ambient}, {[list(r) for r in self.basis]})"


def _echelon(rows: IntMat, pivot_cols: int) -> tuple[IntMat, list[int]]:
    """Row-reduce using pivots in the first ``pivot_cols`` columns only.

    Returns the transformed rows (same count, unimodular transform) with the
    echelon rows first, and their pivot columns."""
    A = [list(r) for r in rows]
    m = len(A)
    r = 0
    pivots = []
    for c in range(pivot_cols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r][c]
            for i in range(r):
                q = A[i][c] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
    return A, pivots


def hnf(rows: Iterable[Sequence[int]], ambient: int | None = None) -> Lattice:
    """Canonical HNF basis of the row span; zero rows are dropped."""
    rows = [[int(x) for x in r] for r in rows]
    if ambient is None:
        if not rows:
            raise ValueError("ambient rank needed for an empty generator list")
        ambient = len(rows[0])
    if any(len(r) != ambient for r in rows):
        raise ValueError("rows must all have the ambient length")
    if not rows:
        return Lattice(ambient, ())
    A, pivots = _echelon(rows, ambient)
    return Lattice(ambient, tuple(tuple(A[i]) for i in range(len(pivots))))


span = hnf


def zero(ambient: int) -> Lattice:
    return Lattice(ambient, ())


def full(ambient: int) -> Lattice:
    return Lattice(ambient, tuple(tuple(int(i == j) for j in range(ambient)) for i in range(ambient)))


def left_kernel(rows: IntMat) -> IntMat:
    """Basis of {u : u @ rows = 0} over Z (rows is m x n)."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    A, pivots = _echelon(aug, n)
    return [row[n:] for row in A[len(pivots):]]


def int_kernel(v: Sequence[int]) -> Lattice:
    """{x in Z^r : x . v = 0}."""
    if not any(v):
        raise ValueError("kernel of the zero vector is requested")
    ker = left_kernel([[int(x)] for x in v])
    return hnf(ker, len(v))


def _pivot(row: Sequence[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


def member(L: Lattice, x: Sequence[int]) -> bool:
    if len(x) != L.ambient:
        raise ValueError("vector length differs from the ambient rank")
    res = [int(a) for a in x]
    n = len(res)
    start = 0
    for row, c in zip(L.basis, L.pivots):
        for k in range(start, c):
            if res[k]:
                return False
        q, r = divmod(res[c], row[c])
        if r:
            return False
        if q:
            for j in range(c, n):
                res[j] -= q * row[j]
        start = c + 1
    for k in range(start, n):
        if res[k]:
            return False
    return True


def contains(big: Lattice, small: Lattice) -> bool:
    return all(member(big, r) for r in small.basis)


def _f2_kernel(A: list[list[int]], k: int) -> list[list[int]]:
    """0/1 basis of {u in F_2^k : A u = 0}."""
    rows = [[x % 2 for x in r] for r in A]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = []
    for f in range(k):
        if f in pivots:
            continue
        u = [0] * k
        u[f] = 1
        for row, pc in zip(rows, pivots):
            u[pc] = row[f]
        out.append(u)
    return out


def mod2_sublattice(L: Lattice, C: Sequence[Sequence[int]]) -> Lattice:
    """{x in L : C (x mod 2) = 0} for a 0/1 constraint matrix C with r columns."""
    if not C or L.rank == 0:
        return L
    if any(len(c) != L.ambient for c in C):
        raise ValueError("constraint rows must have the ambient length")
    B = L.basis
    A = [[sum(ci * bi for ci, bi in zip(c, b)) % 2 for b in B] for c in C]
    gens = []
    for u in _f2_kernel(A, len(B)):
        gens.append([sum(ui * b[j] for ui, b in zip(u, B)) for j in range(L.ambient)])
    gens.extend([2 * x for x in b] for b in B)
    return hnf(gens, L.ambient)


def intersect(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.ambient != L2.ambient:
        raise ValueError("ambient ranks differ")
    if L1.rank == 0 or L2.rank == 0:
        return zero(L1.ambient)
    if L1 == L2:
        return L1
    ker = left_kernel([list(r) for r in L1.basis] + [list(r) for r in L2.basis])
    k1 = L1.rank
    gens = [[sum(u[i] * L1.basis[i][j] for i in range(k1)) for j in range(L1.ambient)] for u in ker]
    return hnf(gens, L1.ambient)


def gram_det(L: Lattice) -> int:
    """det(B B^T), exact via Bareiss elimination."""
    B = L.basis
    k = len(B)
    if k == 0:
        return 1
    M = [[sum(a * b for a, b in zip(B[i], B[j])) for j in range(k)] for i in range(k)]
    sign, prev = 1, 1
    for c in range(k - 1):
        if M[c][c] == 0:
            p = next((i for i in range(c + 1, k) if M[i][c]), None)
            if p is None:
                return 0
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[k - 1][k - 1]


def index(big: Lattice, small: Lattice) -> int:
    """[big : small] for small inside big of the same rank."""
    if big.rank != small.rank or not contains(big, small):
        raise ValueError("index needs a full-rank sublattice")
    q, r = divmod(gram_det(small), gram_det(big))
    s = math.isqrt(q)
    if r or s * s != q:
        raise ArithmeticError("Gram determinant ratio is not a square")
    return s
