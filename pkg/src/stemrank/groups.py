"""Finite groups as multiplication tables, with element and subgroup classes.

Elements are indexed 0..|G|-1 with 0 the identity.  Catalog groups keep a
structured label per element (e.g. ``(k, b)`` for ``r^k s^b`` in a dihedral
group) so explicit matrix models can be evaluated on them.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

DEFAULT_MAX_ORDER = 512


class GroupError(ValueError):
    """Invalid group description."""


class CapExceeded(RuntimeError):
    """A computation was refused because the group is larger than the cap."""


def max_order() -> int:
    return int(os.environ.get("STEMRANK_MAX_ORDER", DEFAULT_MAX_ORDER))


# --------------------------------------------------------------------------
# specs

@dataclass(frozen=True)
class GroupSpec:
    """How to build a group.

    ``kind`` is one of ``"Cn"``, ``"Dih"``, ``"Dic"``, ``"Klein4"``, ``"Sym"``,
    ``"product"`` or ``"perm"``.  ``params`` holds the integer parameter,
    the factor specs, or the permutation generators.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        k, p = self.kind, self.params
        if k in ("Cn", "Dih", "Dic", "Sym"):
            if len(p) != 1 or not isinstance(p[0], int) or p[0] < 1:
                raise GroupError(f"{k} needs one positive integer parameter")
        elif k == "Klein4":
            if p:
                raise GroupError("Klein4 takes no parameters")
        elif k == "product":
            if len(p) < 2 or not all(isinstance(s, GroupSpec) for s in p):
                raise GroupError("product needs at least two factor specs")
        elif k == "perm":
            if not p:
                raise GroupError("need at least one permutation generator")
            m = len(p[0])
            for g in p:
                if len(g) != m or sorted(g) != list(range(m)):
                    raise GroupError(f"generator {list(g)} is not a permutation of 0..{m - 1}")
        else:
            raise GroupError(f"unknown catalog name {k!r}")

    @property
    def is_catalog(self) -> bool:
        if self.kind == "perm":
            return False
        if self.kind == "product":
            return all(s.is_catalog for s in self.params)
        return True

    @property
    def name(self) -> str:
        k, p = self.kind, self.params
        if k == "Cn":
            return f"C{p[0]}"
        if k == "Dih":
            return f"D{2 * p[0]}"
        if k == "Dic":
            return "Q8" if p[0] == 2 else f"Dic{p[0]}"
        if k == "Klein4":
            return "K4"
        if k == "Sym":
            return f"S{p[0]}"
        if k == "product":
            return "x".join(s.name for s in p)
        return "Perm-" + hashlib.sha1(self.key().encode()).hexdigest()[:8]

    def to_json(self) -> dict:
        if self.kind == "perm":
            return {"perm_generators": [list(g) for g in self.params]}
        if self.kind == "product":
            return {"product": [s.to_json() for s in self.params]}
        return {"catalog": self.name}

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


_CATALOG_PATTERNS = [
    (re.compile(r"^(?:Cn\((\d+)\)|C(\d+))$"), "Cn"),
    (re.compile(r"^Dih\((\d+)\)$"), "Dih"),
    (re.compile(r"^Dic\((\d+)\)$|^Dic(\d+)$"), "Dic"),
    (re.compile(r"^Sym\((\d+)\)$|^S(\d+)$"), "Sym"),
]


def parse_group(text: str) -> GroupSpec:
    """Parse a catalog name such as ``C2``, ``D6``, ``Dih(3)``, ``Q8``, ``K4``,
    ``Sym(3)`` or a product ``C2xC3``."""
    text = text.strip()
    if not text:
        raise GroupError("empty group name")
    if "x" in text:
        parts = [p for p in re.split(r"\s*x\s*", text)]
        if len(parts) >= 2 and all(parts):
            return GroupSpec("product", tuple(parse_group(p) for p in parts))
    if text in ("K4", "Klein4", "K", "V4"):
        return GroupSpec("Klein4")
    if text in ("Q8", "Q"):
        return GroupSpec("Dic", (2,))
    m = re.match(r"^D(\d+)$", text)
    if m:
        order = int(m.group(1))
        if order < 2 or order % 2:
            raise GroupError(f"dihedral order must be even, got {order}")
        return GroupSpec("Dih", (order // 2,))
    for pat, kind in _CATALOG_PATTERNS:
        m = pat.match(text)
        if m:
            val = next(g for g in m.groups() if g is not None)
            return GroupSpec(kind, (int(val),))
    raise GroupError(f"unknown catalog name {text!r}")


def spec_from_json(obj) -> GroupSpec:
    if isinstance(obj, str):
        return parse_group(obj)
    if not isinstance(obj, dict):
        raise GroupError("group spec must be an object or a string")
    if "catalog" in obj:
        return parse_group(str(obj["catalog"]))
    if "perm_generators" in obj:
        gens = obj["perm_generators"]
        if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
            raise GroupError("perm_generators must be a list of lists")
        return GroupSpec("perm", tuple(tuple(int(x) for x in g) for g in gens))
    if "product" in obj:
        return GroupSpec("product", tuple(spec_from_json(s) for s in obj["product"]))
    raise GroupError("group spec needs one of catalog, perm_generators, product")


# --------------------------------------------------------------------------
# groups

class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, labels: Sequence[Hashable], table: Sequence[Sequence[int]], *,
                 name: str = "G", spec: GroupSpec | None = None,
                 element_names: dict[int, str] | None = None):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        self.spec = spec
        self.element_names = dict(element_names or {})
        n = len(self.labels)
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
            raise GroupError("element 0 is not the identity")
        inv = [0] * n
        for x in range(n):
            row = self.table[x]
            try:
                inv[x] = row.index(0)
            except ValueError:
                raise GroupError(f"element {x} has no inverse") from None
        self.inv = tuple(inv)
        self._check_assoc()

    def _check_assoc(self, samples: int = 2000):
        n = self.order
        rng = random.Random(n)
        t = self.table
        if n ** 3 <= samples:
            triples = itertools.product(range(n), repeat=3)
        else:
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError("multiplication is not associative")

    @classmethod
    def from_function(cls, labels: Sequence[Hashable], mul: Callable, **kw) -> "FiniteGroup":
        index = {x: i for i, x in enumerate(labels)}
        table = [[index[mul(a, b)] for b in labels] for a in labels]
        return cls(labels, table, **kw)

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inv[g]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.table[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    def generate(self, gens: Sequence[int]) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        seen = {0}
        frontier = [0]
        gens = [g for g in gens if g != 0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                row = t[x]
                for s in gens:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def element_name(self, g: int) -> str:
        return self.element_names.get(g, f"g{g}")

    @cached_property
    def conjugacy_classes(self) -> list["ElementClass"]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.order
        for i, c in enumerate(self.conjugacy_classes):
            for x in c.members:
                out[x] = i
        return tuple(out)

    @cached_property
    def subgroup_classes(self) -> list["SubgroupClass"]:
        return subgroup_classes(self)


# --------------------------------------------------------------------------
# catalog constructions

def _cyclic(n):
    return list(range(n)), (lambda a, b: (a + b) % n), {}


def _dihedral(n):
    # (k, b) = r^k s^b, s r = r^-1 s
    labels = [(k, b) for b in (0, 1) for k in range(n)]

    def mul(x, y):
        (k, b), (l, c) = x, y
        return ((k + (-l if b else l)) % n, b ^ c)

    names = {i: (f"r{k}" if not b else f"r{k}s") for i, (k, b) in enumerate(labels)}
    names[0] = "e"
    return labels, mul, names


def _dicyclic(n):
    # (k, b) = a^k x^b, |a| = 2n, x^2 = a^n, x a x^-1 = a^-1
    m = 2 * n
    labels = [(k, b) for b in (0, 1) for k in range(m)]

    def mul(x, y):
        (k, b), (l, c) = x, y
        k2 = (k + (-l if b else l)) % m
        if b and c:
            return ((k2 + n) % m, 0)
        return (k2, b ^ c)

    if n == 2:
        qn = {(0, 0): "1", (1, 0): "i", (2, 0): "-1", (3, 0): "-i",
              (0, 1): "j", (1, 1): "k", (2, 1): "-j", (3, 1): "-k"}
        names = {i: qn[x] for i, x in enumerate(labels)}
    else:
        names = {i: (f"a{k}" if not b else f"a{k}x") for i, (k, b) in enumerate(labels)}
        names[0] = "e"
    return labels, mul, names


def _klein4():
    return [0, 1, 2, 3], (lambda a, b: a ^ b), {0: "e", 1: "i", 2: "j", 3: "k"}


def _symmetric(n):
    labels = sorted(itertools.permutations(range(n)))

    def mul(p, q):
        return tuple(p[q[x]] for x in range(n))

    return labels, mul, {}


def _perm_closure(gens, cap):
    m = len(gens[0])
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[g[i]] for i in range(m))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        frontier = nxt
    labels = sorted(seen)

    def mul(p, q):
        return tuple(p[q[x]] for x in range(m))

    return labels, mul, {}


def _estimated_order(spec: GroupSpec) -> int | None:
    k, p = spec.kind, spec.params
    if k == "Cn":
        return p[0]
    if k == "Dih":
        return 2 * p[0]
    if k == "Dic":
        return 4 * p[0]
    if k == "Klein4":
        return 4
    if k == "Sym":
        return math.factorial(p[0])
    if k == "product":
        out = 1
        for s in p:
            o = _estimated_order(s)
            if o is None:
                return None
            out *= o
        return out
    return None


def _raw(spec: GroupSpec, cap: int):
    k, p = spec.kind, spec.params
    if k == "Cn":
        return _cyclic(p[0])
    if k == "Dih":
        return _dihedral(p[0])
    if k == "Dic":
        return _dicyclic(p[0])
    if k == "Klein4":
        return _klein4()
    if k == "Sym":
        return _symmetric(p[0])
    if k == "perm":
        return _perm_closure(p, cap)
    if k == "product":
        parts = [_raw(s, cap) for s in p]
        labels = [tuple(t) for t in itertools.product(*(q[0] for q in parts))]
        muls = [q[1] for q in parts]

        def mul(x, y):
            return tuple(f(a, b) for f, a, b in zip(muls, x, y))

        names = {}
        if all(q[2] for q in parts):
            for i, lab in enumerate(labels):
                names[i] = "(" + ",".join(q[2][q[0].index(a)] for q, a in zip(parts, lab)) + ")"
        return labels, mul, names
    raise GroupError(f"unknown catalog name {k!r}")


def build_group(spec: GroupSpec | str, cap: int | None = None) -> FiniteGroup:
    """Build the group described by ``spec`` (a GroupSpec or catalog string)."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    cap = max_order() if cap is None else cap
    est = _estimated_order(spec)
    if est is not None and est > cap:
        raise CapExceeded(f"{spec.name} has order {est} > cap {cap}")
    labels, mul, names = _raw(spec, cap)
    return FiniteGroup.from_function(labels, mul, name=spec.name, spec=spec, element_names=names)


# --------------------------------------------------------------------------
# element classes

@dataclass(frozen=True)
class ElementClass:
    rep: int
    members: tuple[int, ...]
    order: int  # order of the elements in the class
    power_map: tuple[int, ...] = ()  # k -> class index of rep^k, 0 <= k <= exponent

    @property
    def size(self) -> int:
        return len(self.members)


def conjugacy_classes(G: FiniteGroup) -> list[ElementClass]:
    n = G.order
    seen = [False] * n
    raw = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = sorted({G.conj(g, x) for g in range(n)})
        for y in orbit:
            seen[y] = True
        raw.append(orbit)
    orders = G.element_orders
    raw.sort(key=lambda c: (orders[c[0]], c[0]))
    where = [0] * n
    for i, c in enumerate(raw):
        for y in c:
            where[y] = i
    out = []
    for c in raw:
        rep = c[0]
        pm = tuple(where[G.power(rep, k)] for k in range(G.exponent + 1))
        out.append(ElementClass(rep, tuple(c), orders[rep], pm))
    return out


# --------------------------------------------------------------------------
# subgroup classes

@dataclass(frozen=True)
class SubgroupClass:
    id: int
    rep: tuple[int, ...]
    conjugates: tuple[tuple[int, ...], ...]
    normalizer: tuple[int, ...]
    label: str = ""
    cyclic: bool = False

    @property
    def order(self) -> int:
        return len(self.rep)

    @property
    def size(self) -> int:
        return len(self.conjugates)


def _mask(elems) -> int:
    m = 0
    for x in elems:
        m |= 1 << x
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def all_subgroups(G: FiniteGroup, cap: int | None = None) -> list[frozenset[int]]:
    """Every subgroup of G: cyclic seeds saturated under joins with cyclic subgroups."""
    cap = max_order() if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration refused: |G| = {G.order} > cap {cap}")
    cyclic: dict[int, int] = {}  # mask -> a generator
    for g in range(G.order):
        m = _mask(G.generate([g]))
        cyclic.setdefault(m, g)
    cyc = sorted(cyclic.items())
    known: dict[int, tuple[int, ...]] = {m: (g,) for m, g in cyc}
    frontier = list(known)
    while frontier:
        nxt = []
        for hm in sorted(frontier):
            gens = known[hm]
            for cm, g in cyc:
                if cm & ~hm == 0:
                    continue
                new = _mask(G.generate(gens + (g,)))
                if new not in known:
                    known[new] = gens + (g,)
                    nxt.append(new)
        frontier = nxt
    return sorted((frozenset(_members(m)) for m in known), key=lambda s: (len(s), sorted(s)))


def subgroup_classes(G: FiniteGroup, cap: int | None = None) -> list[SubgroupClass]:
    subs = all_subgroups(G, cap)
    remaining = {frozenset(s) for s in subs}
    raw = []
    for s in subs:
        if s not in remaining:
            continue
        conj = set()
        normalizer = []
        for g in range(G.order):
            c = frozenset(G.conj(g, x) for x in s)
            conj.add(c)
            if c == s:
                normalizer.append(g)
        remaining -= conj
        conj_t = sorted(tuple(sorted(c)) for c in conj)
        raw.append((conj_t[0], tuple(conj_t), tuple(normalizer)))
    raw.sort(key=lambda r: (len(r[0]), r[0]))
    out = []
    orders = G.element_orders
    for i, (rep, conj, norm) in enumerate(raw):
        cyclic = any(orders[x] == len(rep) for x in rep)
        out.append(SubgroupClass(i, rep, conj, norm, cyclic=cyclic))
    return _label_classes(G, out)


def _label_classes(G: FiniteGroup, classes: list[SubgroupClass]) -> list[SubgroupClass]:
    orders = G.element_orders
    base = []
    for c in classes:
        if c.order == 1:
            base.append("e")
        elif c.order == G.order:
            base.append(G.name)
        else:
            base.append(("C" if c.cyclic else "H") + str(c.order))
    counts: dict[str, int] = {}
    for b in base:
        counts[b] = counts.get(b, 0) + 1
    labels = []
    seen: dict[str, int] = {}
    for c, b in zip(classes, base):
        if counts[b] == 1:
            labels.append(b)
            continue
        lab = None
        if c.cyclic and G.element_names:
            gen = min(x for x in c.rep if orders[x] == c.order)
            nm = G.element_names.get(gen)
            if nm:
                lab = f"<{nm}>"
        if lab is None:
            seen[b] = seen.get(b, 0) + 1
            lab = f"{b}_{seen[b]}"
        labels.append(lab)
    return [SubgroupClass(c.id, c.rep, c.conjugates, c.normalizer, lab, c.cyclic)
            for c, lab in zip(classes, labels)]


def find_class(classes: Sequence[SubgroupClass], key) -> SubgroupClass:
    """Look up a subgroup class by id or label (``"G"`` names the whole group)."""
    if isinstance(key, int) or (isinstance(key, str) and key.isdigit()):
        return classes[int(key)]
    if key == "G":
        return classes[-1]
    for c in classes:
        if c.label == key:
            return c
    raise KeyError(f"no subgroup class labelled {key!r}")


# --------------------------------------------------------------------------
# Weyl groups

@dataclass
class WeylGroup:
    group: FiniteGroup
    projection: dict[int, int]  # normalizer element -> W index
    section: tuple[int, ...]  # W index -> coset representative in N_G(H)
    subgroup: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return self.group.order


def weyl_group(G: FiniteGroup, K: SubgroupClass) -> WeylGroup:
    H = set(K.rep)
    N = K.normalizer
    cosets: list[tuple[int, ...]] = []
    projection: dict[int, int] = {}
    for n in N:  # N is sorted, so coset minima come out in increasing order
        if n in projection:
            continue
        coset = tuple(sorted(G.mul(n, h) for h in H))
        idx = len(cosets)
        cosets.append(coset)
        for x in coset:
            projection[x] = idx
    section = tuple(c[0] for c in cosets)
    table = [[projection[G.mul(a, b)] for b in section] for a in section]
    names = {i: G.element_name(s) for i, s in enumerate(section)} if G.element_names else {}
    W = FiniteGroup(section, table, name=f"W({K.label or K.id})", element_names=names)
    return WeylGroup(W, projection, section, K.rep)


def generating_sequence(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating sequence: scan elements in index order, keeping those
    not already in the subgroup generated so far."""
    gens: list[int] = []
    span = frozenset([0])
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = G.generate(gens)
            if len(span) == G.order:
                break
    return tuple(gens)
