"""Null lattices, oriented sublattices and ranks of the rational stable stems.

For each conjugacy class of subgroups (H):

* ``null``: virtual representations whose H-fixed points have dimension 0;
* ``plus``: the part of ``null`` on which the Weyl group preserves orientation.

The rank at a degree alpha counts the classes with alpha in ``plus``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import lattice as zl
from .characters import CharacterTable, RealIrrep, character_table, real_irreps
from .groups import FiniteGroup, GroupSpec, SubgroupClass, build_group, find_class, weyl_group
from .orientation import dimension_vector, f2_rank, is_oriented, orientation_data, sign_of

MAX_STRATA = 2 ** 15


class InternalError(AssertionError):
    """Two independent computations that must agree did not."""


def _odd_mask(alpha: Sequence[int]) -> int:
    out = 0
    for i, a in enumerate(alpha):
        if a & 1:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class SubgroupAnalysis:
    class_id: int
    label: str
    order: int
    weyl_order: int
    dims: tuple[int, ...]
    generators: tuple[int, ...]  # Weyl generators as coset representatives in G
    signs: tuple[tuple[int, ...], ...]  # signs[i][g]
    e2_rank: int
    null: zl.Lattice
    plus: zl.Lattice

    @property
    def plus_index(self) -> int:
        return 2 ** self.e2_rank_on_null

    @property
    def e2_rank_on_null(self) -> int:
        # rank of the sign constraints restricted to the null lattice
        rows = [[(1 - s) // 2 for s in sign_of(b, self.signs)] for b in self.null.basis]
        return f2_rank(rows)

    @cached_property
    def _minus_masks(self) -> tuple[int, ...]:
        # per Weyl generator, bitmask of the irreps whose determinant there is -1
        ngen = len(self.generators)
        return tuple(sum(1 << i for i, row in enumerate(self.signs) if row[g] == -1) for g in range(ngen))

    def sign_of(self, alpha: Sequence[int]) -> tuple[int, ...]:
        odd = _odd_mask(alpha)
        return tuple(-1 if (odd & m).bit_count() % 2 else 1 for m in self._minus_masks)

    def oriented(self, alpha: Sequence[int]) -> bool:
        odd = _odd_mask(alpha)
        return not any((odd & m).bit_count() % 2 for m in self._minus_masks)

    def dim(self, alpha: Sequence[int]) -> int:
        return sum(a * x for a, x in zip(alpha, self.dims) if x)

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        out = {
            "class_id": self.class_id,
            "label": self.label,
            "order": self.order,
            "weyl_order": self.weyl_order,
            "d": list(self.dims),
            "weyl_generators": list(self.generators),
            "e2_rank": self.e2_rank,
            "signs": ({n: list(r) for n, r in zip(names, self.signs)} if names
                      else [list(r) for r in self.signs]),
            "N": self.null.to_json(),
            "N_plus": self.plus.to_json(),
            "plus_index": self.plus_index,
        }
        return out

    @classmethod
    def from_json(cls, obj: dict, names: Sequence[str] | None = None) -> "SubgroupAnalysis":
        signs = obj["signs"]
        if isinstance(signs, dict):
            signs = [signs[n] for n in names]
        return cls(int(obj["class_id"]), obj["label"], int(obj["order"]), int(obj["weyl_order"]),
                   tuple(obj["d"]), tuple(obj["weyl_generators"]),
                   tuple(tuple(r) for r in signs), int(obj["e2_rank"]),
                   zl.Lattice.from_json(obj["N"]), zl.Lattice.from_json(obj["N_plus"]))


@dataclass
class Analysis:
    """Everything computed for one group."""

    group: FiniteGroup
    table: CharacterTable
    irreps: list[RealIrrep]
    classes: list[SubgroupAnalysis]
    _oracle: object = field(default=None, repr=False)

    @property
    def names(self) -> list[str]:
        return [S.name for S in self.irreps]

    @property
    def rank(self) -> int:
        return len(self.irreps)

    def subgroup_class(self, key) -> SubgroupClass:
        return find_class(self.group.subgroup_classes, key)

    def class_analysis(self, key) -> SubgroupAnalysis:
        return self.classes[self.subgroup_class(key).id]

    def vector(self, coords: dict[str, int] | Sequence[int]) -> tuple[int, ...]:
        """Coordinates from a positional list or an ``{irrep name: coeff}`` mapping."""
        if isinstance(coords, dict):
            out = [0] * self.rank
            for k, v in coords.items():
                if k not in self.names:
                    raise KeyError(f"unknown irrep name {k!r}; known: {', '.join(self.names)}")
                out[self.names.index(k)] += int(v)
            return tuple(out)
        coords = tuple(int(x) for x in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return coords

    def oracle(self):
        if self._oracle is None:
            from .oracle import MatrixOracle
            self._oracle = MatrixOracle(self.group, self.table, self.irreps)
        return self._oracle


def analyze_subgroup(G: FiniteGroup, irreps: Sequence[RealIrrep], K: SubgroupClass) -> SubgroupAnalysis:
    d = dimension_vector(G, irreps, K).d
    od = orientation_data(G, irreps, K)
    null = zl.int_kernel(d)
    constraints = [[(1 - od.signs[i][g]) // 2 for i in range(len(irreps))]
                   for g in range(len(od.generators))]
    plus = zl.mod2_sublattice(null, constraints)
    out = SubgroupAnalysis(K.id, K.label, K.order, od.weyl_order, d, od.generator_elements(),
                           od.signs, od.e2_rank, null, plus)
    if zl.index(null, plus) != out.plus_index:
        raise InternalError("index of the oriented sublattice is not 2^(constraint rank)")
    if od.weyl_order % 2 and plus != null:
        raise InternalError("odd Weyl group but orientation constraints are nontrivial")
    return out


_CACHE: dict[tuple[str, str], Analysis] = {}


def analyze(group: FiniteGroup | GroupSpec | str, method: str = "auto") -> Analysis:
    """Analyse every subgroup class of a group (memoised per group spec)."""
    G = group if isinstance(group, FiniteGroup) else build_group(group)
    key = (G.spec.key(), method) if G.spec is not None else None
    if key is not None and key in _CACHE:
        return _CACHE[key]
    A = analyze_table(character_table(G, method))
    if key is not None:
        _CACHE[key] = A
    return A


def analyze_table(T: CharacterTable) -> Analysis:
    """Analyse using a given (already verified) character table."""
    G = T.group
    irreps = real_irreps(T)
    classes = [analyze_subgroup(G, irreps, K) for K in G.subgroup_classes]
    return Analysis(G, T, irreps, classes)


# --------------------------------------------------------------------------
# ranks

@dataclass(frozen=True)
class RankResult:
    alpha: tuple[int, ...]
    rank: int
    witnesses: tuple[int, ...]  # class ids


def rank_at(A: Analysis, alpha: Sequence[int]) -> RankResult:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != A.rank:
        raise ValueError(f"expected {A.rank} coordinates, got {len(alpha)}")
    witnesses = tuple(c.class_id for c in A.classes if c.dim(alpha) == 0 and c.oriented(alpha))
    by_lattice = tuple(c.class_id for c in A.classes if zl.member(c.plus, alpha))
    if witnesses != by_lattice:
        raise InternalError(f"rank routes disagree at {alpha}: {witnesses} vs {by_lattice}")
    return RankResult(alpha, len(witnesses), witnesses)


# --------------------------------------------------------------------------
# strata

@dataclass(frozen=True)
class Stratum:
    lattice: zl.Lattice
    classes: tuple[int, ...]  # maximal set of classes whose N+ contains the lattice

    @property
    def generic_rank(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class StratumReport:
    strata: tuple[Stratum, ...]


def containing_classes(A: Analysis, L: zl.Lattice) -> tuple[int, ...]:
    return tuple(c.class_id for c in A.classes if zl.contains(c.plus, L))


def strata_report(A: Analysis, limit: int = MAX_STRATA) -> StratumReport:
    """Close {N_H+} under pairwise intersection and annotate each lattice."""
    found: list[zl.Lattice] = []
    seen: set[zl.Lattice] = set()
    for c in A.classes:
        if c.plus not in seen:
            seen.add(c.plus)
            found.append(c.plus)
    i = 0
    while i < len(found):
        L = found[i]
        for j in range(i):
            M = zl.intersect(L, found[j])
            if M not in seen:
                seen.add(M)
                found.append(M)
                if len(found) > limit:
                    raise OverflowError(f"more than {limit} distinct strata")
        i += 1
    strata = [Stratum(L, containing_classes(A, L)) for L in found]
    strata.sort(key=lambda s: (-s.generic_rank, s.lattice.basis))
    return StratumReport(tuple(strata))


# --------------------------------------------------------------------------
# Mackey coefficients

@dataclass(frozen=True)
class MackeyCoefficients:
    """Per class id: (sign character on the Weyl generators, multiplicity) pairs."""

    entries: dict[int, tuple[tuple[tuple[int, ...], int], ...]]

    @classmethod
    def burnside(cls, A: Analysis) -> "MackeyCoefficients":
        return cls({c.class_id: ((tuple(1 for _ in c.generators), 1),) for c in A.classes})

    @classmethod
    def zero(cls, A: Analysis) -> "MackeyCoefficients":
        return cls({c.class_id: () for c in A.classes})

    @classmethod
    def from_json(cls, A: Analysis, obj) -> "MackeyCoefficients":
        """``"burnside"``, ``"zero"``, or ``{"classes": {key: [{"signs": [...], "mult": m}]}}``."""
        if obj in ("burnside", {"kind": "burnside"}):
            return cls.burnside(A)
        if obj in ("zero", {"kind": "zero"}):
            return cls.zero(A)
        entries: dict[int, list] = {c.class_id: [] for c in A.classes}
        for key, items in obj["classes"].items():
            cid = A.subgroup_class(key).id
            for it in items:
                entries[cid].append((tuple(int(s) for s in it["signs"]), int(it.get("mult", 1))))
        M = cls({k: tuple(v) for k, v in entries.items()})
        validate_mackey(A, M)
        return M


def _extends_to_hom(G: FiniteGroup, K: SubgroupClass, gens: Sequence[int], signs: Sequence[int]) -> bool:
    W = weyl_group(G, K)
    wgens = [W.projection[g] for g in gens]
    val = {0: 1}
    frontier = [0]
    t = W.group.table
    while frontier:
        nxt = []
        for x in frontier:
            for g, s in zip(wgens, signs):
                y, v = t[x][g], val[x] * s
                if y in val:
                    if val[y] != v:
                        return False
                else:
                    val[y] = v
                    nxt.append(y)
        frontier = nxt
    return len(val) == W.order


def validate_mackey(A: Analysis, M: MackeyCoefficients) -> None:
    for cid, items in M.entries.items():
        c = A.classes[cid]
        K = A.group.subgroup_classes[cid]
        for signs, mult in items:
            if mult < 0:
                raise ValueError(f"negative multiplicity at class {c.label}")
            if len(signs) != len(c.generators) or any(s not in (1, -1) for s in signs):
                raise ValueError(f"class {c.label} needs {len(c.generators)} signs (+1/-1)")
            if not _extends_to_hom(A.group, K, c.generators, signs):
                raise ValueError(f"signs {list(signs)} are not a character of W({c.label})")


def mackey_rank(A: Analysis, alpha: Sequence[int], M: MackeyCoefficients) -> int:
    """Sum over classes with alpha^H = 0 of the multiplicity of o_H(alpha) in M."""
    alpha = tuple(alpha)
    total = 0
    for c in A.classes:
        if c.dim(alpha):
            continue
        s = c.sign_of(alpha)
        total += sum(m for signs, m in M.entries.get(c.class_id, ()) if tuple(signs) == s)
    return total


# --------------------------------------------------------------------------
# verification of printed tables

@dataclass(frozen=True)
class Claim:
    """A printed lattice: the intersection over ``classes`` of N_H+ (kind "N+") or N_H (kind "N")."""

    label: str
    classes: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...]
    kind: str = "N+"

    @classmethod
    def from_json(cls, A: Analysis, obj: dict) -> "Claim":
        kind = obj.get("kind", "N+")
        if kind not in ("N", "N+"):
            raise ValueError(f"claim kind must be 'N' or 'N+', got {kind!r}")
        gens = tuple(A.vector(g) for g in obj["generators"])
        return cls(obj["label"], tuple(str(k) for k in obj["classes"]), gens, kind)


@dataclass
class GeneratorCheck:
    vector: tuple[int, ...]
    computed: bool  # member of the computed intersection (character route)
    oracle: bool | None  # defining conditions via explicit matrices
    per_class: dict = field(default_factory=dict)


@dataclass
class ClaimCheck:
    claim: Claim
    lattice: zl.Lattice
    claimed_span: zl.Lattice
    generators: list[GeneratorCheck]
    equal: bool
    relation: str

    @property
    def oracle_disagreements(self) -> list[GeneratorCheck]:
        return [g for g in self.generators if g.oracle is not None and g.oracle != g.computed]

    @property
    def claim_disagreements(self) -> list[str]:
        out = [f"generator {list(g.vector)} is not in the computed lattice"
               for g in self.generators if not g.computed]
        if not self.equal:
            out.append(f"claimed span differs from computed lattice ({self.relation})")
        return out


@dataclass
class VerificationReport:
    group: str
    checks: list[ClaimCheck]
    oracle_available: bool

    @property
    def oracle_disagreements(self) -> list[tuple[str, GeneratorCheck]]:
        return [(c.claim.label, g) for c in self.checks for g in c.oracle_disagreements]

    @property
    def claim_disagreements(self) -> list[tuple[str, str]]:
        return [(c.claim.label, d) for c in self.checks for d in c.claim_disagreements]

    @property
    def ok(self) -> bool:
        return not self.oracle_disagreements and not self.claim_disagreements


def intersection(A: Analysis, keys: Iterable, kind: str = "N+") -> zl.Lattice:
    L = None
    for k in keys:
        c = A.class_analysis(k)
        P = c.plus if kind == "N+" else c.null
        L = P if L is None else zl.intersect(L, P)
    if L is None:
        raise ValueError("empty class list")
    return L


def _relation(computed: zl.Lattice, claimed: zl.Lattice) -> str:
    if computed == claimed:
        return "equal"
    inside = zl.contains(computed, claimed)
    outside = zl.contains(claimed, computed)
    if inside and claimed.rank == computed.rank:
        return f"claimed span has index {zl.index(computed, claimed)} in the computed lattice"
    if outside and claimed.rank == computed.rank:
        return f"computed lattice has index {zl.index(claimed, computed)} in the claimed span"
    if inside:
        return f"claimed span has rank {claimed.rank} < computed rank {computed.rank}"
    if outside:
        return f"claimed span has rank {claimed.rank} > computed rank {computed.rank}"
    return "claimed span and computed lattice are incomparable"


def verify_claims(A: Analysis, claims: Sequence[Claim]) -> VerificationReport:
    """Compare printed lattice claims against the computation; never raises on disagreement."""
    try:
        oracle = A.oracle()
    except LookupError:
        oracle = None
    checks = []
    for cl in claims:
        L = intersection(A, cl.classes, cl.kind)
        need_or = cl.kind == "N+"
        gens = []
        for v in cl.generators:
            per = {}
            ok_oracle = None if oracle is None else True
            for key in cl.classes:
                K = A.subgroup_class(key)
                c = A.classes[K.id]
                char_dim = sum(a * x for a, x in zip(v, c.dims)) == 0
                char_or = is_oriented(v, c.signs) if need_or else True
                entry = {"dim_zero": char_dim, "oriented": char_or}
                if oracle is not None:
                    od, oo = oracle.conditions(v, K, c.generators)
                    entry["oracle_dim_zero"], entry["oracle_oriented"] = od, oo
                    ok_oracle = ok_oracle and od and (oo or not need_or)
                per[K.label] = entry
            gens.append(GeneratorCheck(tuple(v), zl.member(L, v), ok_oracle, per))
        claimed = zl.hnf(cl.generators, A.rank) if cl.generators else zl.zero(A.rank)
        checks.append(ClaimCheck(cl, L, claimed, gens, claimed == L, _relation(L, claimed)))
    return VerificationReport(A.group.name, checks, oracle is not None)


def load_claims(A: Analysis, path_or_obj) -> list[Claim]:
    if isinstance(path_or_obj, (str, bytes)) or hasattr(path_or_obj, "read_text"):
        with open(path_or_obj) as fh:
            obj = json.load(fh)
    else:
        obj = path_or_obj
    if isinstance(obj, dict):
        obj = obj["claims"]
    return [Claim.from_json(A, c) for c in obj]
