"""Brute-force orientation oracle built from explicit matrix models.

Works only from matrices: the H-fixed subspace is the image of the averaging
projector, and the Weyl action on it is solved for and its determinant taken,
all in exact cyclotomic arithmetic.  Character values and power maps are not
used, so it independently checks the character-theoretic route.

Fixed dimensions and determinants do not change under extension of scalars,
so a real irrep is modelled by its complexification: the complex model itself
(real type) or the model plus its conjugate (complex and quaternionic type).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import matrices as mx
from .catalog import ComplexModel, group_models
from .characters import CharacterTable, RealIrrep
from .cyclotomic import CycNum
from .groups import FiniteGroup, SubgroupClass


class OracleUnavailable(LookupError):
    pass


def real_model(S: RealIrrep, models: Sequence[ComplexModel]):
    cons = [models[i] for i in S.constituents]
    if S.fs_type == "real":
        return cons[0]
    if S.fs_type == "complex-pair":
        a, b = cons
        return lambda g: mx.block_diag(a(g), b(g))
    m = cons[0]
    return lambda g: mx.block_diag(m(g), mx.conjugate(m(g)))


@dataclass(frozen=True)
class OracleClassData:
    class_id: int
    dims: tuple[int, ...]
    signs: tuple[tuple[int, ...], ...]  # signs[i][g] on the given Weyl generators


class MatrixOracle:
    """Per-group oracle; ``orientation(K, generators)`` is memoised per class."""

    def __init__(self, G: FiniteGroup, table: CharacterTable, irreps: Sequence[RealIrrep]):
        models = group_models(G)
        if models is None or table.source != "catalog":
            raise OracleUnavailable(f"no explicit matrix models for {G.name}")
        self.G = G
        self.irreps = list(irreps)
        self.reps = [real_model(S, models) for S in irreps]
        self._mats: dict[tuple[int, int], mx.Matrix] = {}
        self._cache: dict[tuple[int, tuple[int, ...]], OracleClassData] = {}
        # models must realise the characters they stand for
        for i, S in enumerate(self.irreps):
            for cl in table.classes:
                if mx.trace(self.matrix(i, cl.rep)) != S.character[G.class_of[cl.rep]]:
                    raise ValueError(f"model of {S.name} does not match its character")

    def matrix(self, i: int, g: int) -> mx.Matrix:
        key = (i, g)
        if key not in self._mats:
            self._mats[key] = self.reps[i](self.G.labels[g])
        return self._mats[key]

    def fixed_basis(self, i: int, K: SubgroupClass) -> mx.Matrix:
        H = K.rep
        P = self.matrix(i, H[0])
        for h in H[1:]:
            P = mx.add(P, self.matrix(i, h))
        P = mx.scale(P, CycNum.rational(1) / len(H))
        return mx.column_basis(P)

    def weyl_det(self, i: int, B: mx.Matrix, n: int) -> int:
        if not B or not B[0]:
            return 1
        M = mx.solve_left_basis(B, mx.matmul(self.matrix(i, n), B))
        d = mx.det(M)
        q = d.as_rational() if isinstance(d, CycNum) else d
        if q not in (1, -1):
            raise ArithmeticError(f"Weyl determinant {q} is not a sign")
        return int(q)

    def orientation(self, K: SubgroupClass, generators: Sequence[int]) -> OracleClassData:
        """Fixed dimensions and Weyl determinants at the given coset representatives."""
        key = (K.id, tuple(generators))
        if key in self._cache:
            return self._cache[key]
        dims, signs = [], []
        for i in range(len(self.irreps)):
            B = self.fixed_basis(i, K)
            k = len(B[0]) if B and B[0] else 0
            dims.append(k)
            signs.append(tuple(self.weyl_det(i, B, n) for n in generators) if k else
                         tuple(1 for _ in generators))
        out = OracleClassData(K.id, tuple(dims), tuple(signs))
        self._cache[key] = out
        return out

    def conditions(self, alpha: Sequence[int], K: SubgroupClass, generators: Sequence[int]) -> tuple[bool, bool]:
        """(alpha^H has dimension 0, Weyl group preserves orientation of alpha^H)."""
        data = self.orientation(K, generators)
        dim = sum(a * d for a, d in zip(alpha, data.dims))
        sign = [1] * len(generators)
        for a, row in zip(alpha, data.signs):
            if a % 2:
                sign = [x * s for x, s in zip(sign, row)]
        return dim == 0, all(s == 1 for s in sign)

