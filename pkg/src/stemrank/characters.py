"""Complex character tables, Frobenius-Schur indicators and simple real representations.

Two exact routes produce a table: traces of the catalog matrix models, and the
Dixon-Schneider method (simultaneous eigenvectors of the class matrices over a
prime field, lifted to cyclotomic values).
"""

from __future__ import annotations

import hashlib
import math
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import group_models
from .cyclotomic import CycNum, galois
from .groups import CapExceeded, ElementClass, FiniteGroup, max_order
from .matrices import trace

PRIME_SEARCH_BOUND = 10**6


class CharacterError(ArithmeticError):
    pass


@dataclass
class CharacterTable:
    group: FiniteGroup
    classes: list[ElementClass]
    chars: list[tuple[CycNum, ...]]
    source: str  # "catalog", "dixon" or "imported"
    names: list[str] = field(default_factory=list)
    real_names: list[str | None] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [row[0].as_int() for row in self.chars]

    @property
    def conductor(self) -> int:
        return self.group.exponent

    def __len__(self):
        return len(self.chars)


# --------------------------------------------------------------------------
# pairings

def class_inner(G: FiniteGroup, a: Sequence[CycNum], b: Sequence[CycNum]) -> Fraction:
    """(1/|G|) sum_g a(g) conj(b(g)) for class functions given per class."""
    return _inner(G, a, [y.conjugate() for y in b])


def _inner(G, a, bbar) -> Fraction:
    s = CycNum.rational(0, G.exponent)
    for c, x, y in zip(G.conjugacy_classes, a, bbar):
        s = s + x * y * c.size
    return (s / G.order).as_rational()


def check_orthogonality(T: CharacterTable) -> None:
    G = T.group
    k = len(T.classes)
    if len(T.chars) != k:
        raise CharacterError(f"{len(T.chars)} characters for {k} classes")
    conj = [[x.conjugate() for x in row] for row in T.chars]
    for i in range(k):
        for j in range(i, k):
            ip = _inner(G, T.chars[i], conj[j])
            if ip != (1 if i == j else 0):
                raise CharacterError(f"rows {i},{j} have inner product {ip}")
    sizes = [c.size for c in T.classes]
    for a in range(k):
        for b in range(a, k):
            s = CycNum.rational(0, G.exponent)
            for row, crow in zip(T.chars, conj):
                s = s + row[a] * crow[b]
            want = Fraction(G.order, sizes[a]) if a == b else 0
            if s != want:
                raise CharacterError(f"columns {a},{b} fail orthogonality")
    if sum(d * d for d in T.degrees) != G.order:
        raise CharacterError("sum of squared degrees differs from |G|")


# --------------------------------------------------------------------------
# catalog route

def catalog_table(G: FiniteGroup) -> CharacterTable | None:
    models = group_models(G)
    if models is None:
        return None
    e = G.exponent
    chars = []
    for m in models:
        row = []
        for c in G.conjugacy_classes:
            row.append(_at_conductor(trace(m(G.labels[c.rep])), e))
        chars.append(tuple(row))
    T = CharacterTable(G, G.conjugacy_classes, chars, "catalog",
                       [m.name for m in models], [m.real_name for m in models])
    check_orthogonality(T)
    return T


def _at_conductor(v, e: int) -> CycNum:
    if not isinstance(v, CycNum):
        v = CycNum.rational(v)
    if e % v.n:
        raise CharacterError(f"value of conductor {v.n} does not fit the exponent {e}")
    return v.lift(e)


# --------------------------------------------------------------------------
# Dixon-Schneider route

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2 sqrt(order)."""
    p = 1
    while True:
        p += exponent
        if p > PRIME_SEARCH_BOUND:
            raise CharacterError("no suitable prime below the search bound")
        if p * p > 4 * order and _is_prime(p):
            return p


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def _rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _nullspace_mod(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat[0])
    red, pivots = _rref_mod(mat, p)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        out.append(v)
    return out


def class_matrices(G: FiniteGroup) -> list[list[list[int]]]:
    """A[j][k][l] = #{x in C_j : x^-1 g_l in C_k} for class representatives g_l."""
    classes = G.conjugacy_classes
    c = len(classes)
    where = G.class_of
    out = []
    for cj in classes:
        A = [[0] * c for _ in range(c)]
        for l, cl in enumerate(classes):
            g = cl.rep
            for x in cj.members:
                A[where[G.mul(G.inv[x], g)]][l] += 1
        out.append(A)
    return out


def _split(space: list[list[int]], A: list[list[int]], p: int) -> list[list[list[int]]]:
    """Split an A-invariant subspace (rows in RREF) into eigenspaces of A."""
    red, pivots = _rref_mod(space, p)
    d = len(red)
    if d == 1:
        return [red]
    c = len(A)
    images = [[sum(A[i][k] * b[k] for k in range(c)) % p for i in range(c)] for b in red]
    # R[s][t]: coordinate s of A b_t in the basis
    R = [[images[t][pivots[s]] for t in range(d)] for s in range(d)]
    parts = []
    found = 0
    for lam in range(p):
        M = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
        ns = _nullspace_mod(M, p)
        if ns:
            vecs = [[sum(u[t] * red[t][i] for t in range(d)) % p for i in range(c)] for u in ns]
            parts.append(_rref_mod(vecs, p)[0])
            found += len(ns)
            if found == d:
                break
    if found != d:
        raise CharacterError("class matrix is not diagonalisable mod p")
    return parts


def dixon_table(G: FiniteGroup) -> CharacterTable:
    if G.order > max_order():
        raise CapExceeded(f"character table refused: |G| = {G.order} > cap")
    classes = G.conjugacy_classes
    c = len(classes)
    order, e = G.order, G.exponent
    p = dixon_prime(order, e)
    mats = class_matrices(G)
    spaces = [[[1 if i == j else 0 for j in range(c)] for i in range(c)]]
    for A in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        nxt = []
        for s in spaces:
            nxt.extend(_split(s, A, p) if len(s) > 1 else [s])
        spaces = nxt
    if any(len(s) != 1 for s in spaces):
        raise CharacterError("class matrices fail to separate the characters")
    z = pow(_primitive_root(p), (p - 1) // e, p)
    sizes = [cl.size for cl in classes]
    inv_class = [G.class_of[G.inv[cl.rep]] for cl in classes]
    chars = []
    for (v,) in spaces:
        inv0 = pow(v[0], p - 2, p)
        omega = [x * inv0 % p for x in v]
        s = sum(omega[l] * omega[inv_class[l]] * pow(sizes[l], p - 2, p) for l in range(c)) % p
        d2 = order * pow(s, p - 2, p) % p
        deg = next((d for d in range(1, math.isqrt(order) + 1) if d * d % p == d2), None)
        if deg is None:
            raise CharacterError("degree recovery failed")
        vals_p = [omega[l] * deg * pow(sizes[l], p - 2, p) % p for l in range(c)]
        chars.append(tuple(_lift(G, classes, vals_p, l, z, p, deg) for l in range(c)))
    chars.sort(key=lambda row: (row[0].as_int(), any(x != 1 for x in row),
                                [(x.nums, x.den) for x in row]))
    T = CharacterTable(G, classes, chars, "dixon")
    check_orthogonality(T)
    return T


def _lift(G, classes, vals_p, l, z, p, deg) -> CycNum:
    e = G.exponent
    m = classes[l].order
    zm = pow(z, e // m, p)
    pm = classes[l].power_map
    inv_m = pow(m, p - 2, p)
    coeffs = [0] * e
    for j in range(m):
        acc = 0
        for s in range(m):
            acc += vals_p[pm[s]] * pow(zm, (-j * s) % m, p)
        mult = acc * inv_m % p
        if 2 * mult >= p or mult > deg:
            raise CharacterError("eigenvalue multiplicity out of range while lifting")
        coeffs[(j * (e // m)) % e] += mult
    return CycNum(e, coeffs)


# --------------------------------------------------------------------------
# front door

def character_table(G: FiniteGroup, method: str = "auto") -> CharacterTable:
    """Irreducible complex characters of G.

    ``method`` is ``"catalog"``, ``"dixon"`` or ``"auto"`` (catalog when the
    group has catalogued models, otherwise Dixon-Schneider).
    """
    if method not in ("auto", "catalog", "dixon"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "catalog"):
        T = catalog_table(G)
        if T is not None:
            return T
        if method == "catalog":
            raise CharacterError(f"no catalog table for {G.name}")
    return dixon_table(G)


def tables_agree(a: CharacterTable, b: CharacterTable) -> bool:
    """Equal up to a permutation of rows (classes are shared via the group)."""
    return sorted(a.chars, key=_row_key) == sorted(b.chars, key=_row_key)


def _row_key(row):
    return [(x.nums, x.den) for x in row]


def fs_indicator(T: CharacterTable, i: int) -> int:
    """(1/|G|) sum_g chi_i(g^2)."""
    G = T.group
    s = CycNum.rational(0, G.exponent)
    row = T.chars[i]
    for cl in T.classes:
        s = s + row[cl.power_map[2 % G.exponent]] * cl.size
    q = (s / G.order).as_rational()
    if q not in (-1, 0, 1):
        raise CharacterError(f"indicator {q} is not in {{-1, 0, 1}}")
    return int(q)


# --------------------------------------------------------------------------
# real representations

FS_TYPES = {1: "real", 0: "complex-pair", -1: "quaternionic"}


@dataclass(frozen=True)
class RealIrrep:
    index: int  # 1-based; 1 is the trivial representation
    name: str
    character: tuple[CycNum, ...]
    degree: int
    fs_type: str
    constituents: tuple[int, ...]  # rows of the complex table


def real_irreps(T: CharacterTable) -> list[RealIrrep]:
    raw = []
    used = set()
    for i, row in enumerate(T.chars):
        if i in used:
            continue
        fs = fs_indicator(T, i)
        if fs == 1:
            char, cons = row, (i,)
        elif fs == -1:
            char, cons = tuple(x * 2 for x in row), (i,)
        else:
            conj = tuple(galois(x, -1) for x in row)
            j = next(k for k, r in enumerate(T.chars) if r == conj)
            used.add(j)
            char, cons = tuple(x + y for x, y in zip(row, conj)), (i, j)
        used.add(i)
        name = T.real_names[i] if T.real_names else None
        raw.append((char, FS_TYPES[fs], cons, name))
    trivial = [r for r in raw if all(x == 1 for x in r[0])]
    rest = [r for r in raw if r is not trivial[0]]
    rest = _sort_real(rest, T.classes)
    out = []
    for idx, (char, fs, cons, name) in enumerate(trivial + rest, start=1):
        if name is None:
            name = "1" if idx == 1 else f"S{idx}"
        out.append(RealIrrep(idx, name, char, char[0].as_int(), fs, cons))
    return out


def _sort_real(items, classes):
    # classes are scanned highest element order first, then by index, so that
    # e.g. phi_1, phi_2, ... of a cyclic group come out in order
    scan = sorted(range(len(classes)), key=lambda k: (-classes[k].order, classes[k].rep))

    def cmp(a, b):
        da, db = a[0][0].as_int(), b[0][0].as_int()
        if da != db:
            return -1 if da < db else 1
        for k in scan:
            x, y = a[0][k], b[0][k]
            if x != y:
                # larger real value first at the first differing class
                return -1 if float(x) > float(y) else 1
        return 0

    return sorted(items, key=functools.cmp_to_key(cmp))


# --------------------------------------------------------------------------
# JSON

def group_hash(G: FiniteGroup) -> str:
    h = hashlib.sha256()
    for row in G.table:
        h.update(bytes(str(row), "ascii"))
    return h.hexdigest()[:16]


def table_to_json(T: CharacterTable) -> dict:
    G = T.group
    return {
        "group_hash": group_hash(G),
        "group": G.spec.to_json() if G.spec else None,
        "source": T.source,
        "classes": [{"size": c.size, "rep": c.rep, "word": G.element_name(c.rep)} for c in T.classes],
        "names": list(T.names),
        "real_names": list(T.real_names),
        "chars": [[x.to_json() for x in row] for row in T.chars],
    }


def table_from_json(G: FiniteGroup, obj: dict, source: str = "imported") -> CharacterTable:
    """Rebuild and re-verify a table for G; class columns may arrive in any order.

    A class ``rep`` is an element index, an element name, or (for permutation
    groups) the permutation image list.
    """
    gh = obj.get("group_hash")
    if gh is not None and gh != group_hash(G):
        raise CharacterError("table was exported for a different group")
    classes = G.conjugacy_classes
    cols = []
    for c in obj["classes"]:
        rep = c.get("rep", c.get("word"))
        idx = _resolve_element(G, rep)
        k = G.class_of[idx]
        if classes[k].size != int(c.get("size", classes[k].size)):
            raise CharacterError(f"class size mismatch for representative {rep!r}")
        cols.append(k)
    if sorted(cols) != list(range(len(classes))):
        raise CharacterError("imported classes do not match the group's classes")
    e = G.exponent
    chars = []
    for row in obj["chars"]:
        vals = [None] * len(classes)
        for k, v in zip(cols, row):
            x = v if isinstance(v, CycNum) else (CycNum.from_json(v) if isinstance(v, dict)
                                                 else CycNum.rational(Fraction(v)))
            vals[k] = _at_conductor(x, e)
        chars.append(tuple(vals))
    T = CharacterTable(G, classes, chars, source,
                       list(obj.get("names") or []), list(obj.get("real_names") or []))
    check_orthogonality(T)
    return T


def _resolve_element(G: FiniteGroup, rep) -> int:
    if isinstance(rep, int):
        if not 0 <= rep < G.order:
            raise CharacterError(f"element index {rep} out of range")
        return rep
    if isinstance(rep, list):
        t = tuple(rep)
        if t in G.labels:
            return G.labels.index(t)
    if isinstance(rep, str):
        for i, nm in G.element_names.items():
            if nm == rep:
                return i
        if rep.startswith("g") and rep[1:].isdigit():
            return int(rep[1:])
    raise CharacterError(f"cannot resolve class representative {rep!r}")
