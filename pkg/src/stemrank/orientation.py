"""Fixed-point dimensions and orientation characters of Weyl groups.

For a subgroup class (H) and a simple real representation S, the Weyl group
W = N_G(H)/H acts on the fixed space S^H.  Its determinant is a homomorphism
W -> {+1, -1}; a virtual representation is oriented at H when the product of
these signs (with its coefficients as exponents) is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .characters import RealIrrep
from .cyclotomic import CycNum
from .groups import FiniteGroup, SubgroupClass, WeylGroup, generating_sequence, weyl_group


class OrientationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DimensionVector:
    class_id: int
    d: tuple[int, ...]


@dataclass(frozen=True)
class OrientationData:
    class_id: int
    weyl: WeylGroup
    generators: tuple[int, ...]  # W indices
    signs: tuple[tuple[int, ...], ...]  # signs[i][g]: det of S_i^H at generator g
    characters: tuple[tuple[int, ...], ...]  # full sign characters on W
    e2_rank: int

    @property
    def weyl_order(self) -> int:
        return self.weyl.order

    def generator_elements(self) -> tuple[int, ...]:
        """Generators as coset representatives in G."""
        return tuple(self.weyl.section[w] for w in self.generators)


def _value(G: FiniteGroup, S: RealIrrep, g: int) -> CycNum:
    return S.character[G.class_of[g]]


def fixed_dim(G: FiniteGroup, S: RealIrrep, K: SubgroupClass) -> int:
    """dim S^H = (1/|H|) sum_{h in H} chi_S(h)."""
    s = CycNum.rational(0, G.exponent)
    for h in K.rep:
        s = s + _value(G, S, h)
    q = (s / len(K.rep)).as_rational()
    if q.denominator != 1 or q < 0:
        raise OrientationError(f"fixed dimension {q} of {S.name} is not a natural number")
    return int(q)


def dimension_vector(G: FiniteGroup, irreps: Sequence[RealIrrep], K: SubgroupClass) -> DimensionVector:
    return DimensionVector(K.id, tuple(fixed_dim(G, S, K) for S in irreps))


def weyl_fixed_character(G: FiniteGroup, S: RealIrrep, K: SubgroupClass,
                         W: WeylGroup | None = None) -> list[CycNum]:
    """psi(wH) = (1/|H|) sum_h chi_S(n_w h), one value per Weyl element."""
    W = W or weyl_group(G, K)
    H = K.rep
    out = []
    for w, n in enumerate(W.section):
        s = CycNum.rational(0, G.exponent)
        for h in H:
            s = s + _value(G, S, G.mul(n, h))
        out.append(s / len(H))
    # representative independence: redo one coset with a different representative
    if len(H) > 1 and W.order > 1:
        w = W.order - 1
        alt = G.mul(W.section[w], H[-1])
        s = CycNum.rational(0, G.exponent)
        for h in H:
            s = s + _value(G, S, G.mul(alt, h))
        if s / len(H) != out[w]:
            raise OrientationError("Weyl character depends on the coset representative")
    return out


def minus_one_multiplicity(Wg: FiniteGroup, psi: Sequence[CycNum], w: int) -> int:
    m = Wg.element_orders[w]
    s = CycNum.rational(0, psi[0].n)
    x = 0
    for k in range(m):
        s = s + psi[x] * (-1 if k % 2 else 1)
        x = Wg.mul(x, w)
    mu = (s / m).as_rational()
    if mu.denominator != 1 or mu < 0:
        raise OrientationError(f"-1 eigenvalue multiplicity {mu} is not a natural number")
    return int(mu)


def exterior_det(Wg: FiniteGroup, psi: Sequence[CycNum], w: int) -> int:
    """Top exterior power via Lambda^k = (1/k) sum_j (-1)^(j-1) psi(w^j) Lambda^(k-j)."""
    deg = psi[0].as_int()
    powers = [0]
    for _ in range(deg):
        powers.append(Wg.mul(powers[-1], w))
    lam = [CycNum.rational(1, psi[0].n)]
    for k in range(1, deg + 1):
        s = CycNum.rational(0, psi[0].n)
        for j in range(1, k + 1):
            term = psi[powers[j]] * lam[k - j]
            s = s + (term if j % 2 else -term)
        lam.append(s / k)
    d = lam[deg].as_rational()
    if d not in (1, -1):
        raise OrientationError(f"determinant {d} is not a sign")
    return int(d)


def det_character(Wg: FiniteGroup, psi: Sequence[CycNum], cross_check: bool = True) -> tuple[int, ...]:
    """Determinant character of a real representation of W given by its character."""
    out = []
    for w in range(Wg.order):
        m = Wg.element_orders[w]
        val = 1 if m % 2 else (-1) ** minus_one_multiplicity(Wg, psi, w)
        if cross_check and exterior_det(Wg, psi, w) != val:
            raise OrientationError("determinant routes disagree; psi is not a real character")
        out.append(val)
    t = Wg.table
    for a in range(Wg.order):
        for b in range(Wg.order):
            if out[t[a][b]] != out[a] * out[b]:
                raise OrientationError("determinant character is not multiplicative")
    return tuple(out)


def f2_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_2 of a 0/1 matrix."""
    vecs = []
    for r in rows:
        v = 0
        for i, b in enumerate(r):
            if b % 2:
                v |= 1 << i
        vecs.append(v)
    rank = 0
    while vecs:
        v = vecs.pop()
        if not v:
            continue
        rank += 1
        low = v & -v
        vecs = [x ^ v if x & low else x for x in vecs]
    return rank


def orientation_data(G: FiniteGroup, irreps: Sequence[RealIrrep], K: SubgroupClass) -> OrientationData:
    W = weyl_group(G, K)
    gens = generating_sequence(W.group)
    chars = []
    for S in irreps:
        psi = weyl_fixed_character(G, S, K, W)
        chars.append(det_character(W.group, psi))
    signs = tuple(tuple(ch[g] for g in gens) for ch in chars)
    bits = [[(1 - s) // 2 for s in row] for row in signs]
    return OrientationData(K.id, W, gens, signs, tuple(chars), f2_rank(bits))


def sign_of(alpha: Sequence[int], signs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Orientation character of alpha on the Weyl generators."""
    ngen = len(signs[0]) if signs else 0
    out = [1] * ngen
    for a, row in zip(alpha, signs):
        if a % 2:
            out = [x * s for x, s in zip(out, row)]
    return tuple(out)


def is_oriented(alpha: Sequence[int], signs: Sequence[Sequence[int]]) -> bool:
    return all(s == 1 for s in sign_of(alpha, signs))


def virtual_dimension(alpha: Sequence[int], d: Sequence[int]) -> int:
    return sum(a * x for a, x in zip(alpha, d))
