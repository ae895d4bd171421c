"""Explicit irreducible complex matrix models for the catalog groups.

Each model maps an element label (as produced by ``groups.build_group``) to a
square matrix of CycNum entries.  ``real_name`` is the name of the simple real
representation the model contributes to; conjugate models share it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .cyclotomic import CycNum
from .groups import FiniteGroup, GroupSpec
from .matrices import Matrix, kron, matmul


@dataclass(frozen=True)
class ComplexModel:
    name: str
    real_name: str | None
    degree: int
    func: Callable[[object], Matrix]

    def __call__(self, label) -> Matrix:
        return self.func(label)


def _q(x, n=1) -> CycNum:
    return CycNum.rational(x, n)


def _z(n, k) -> CycNum:
    return CycNum.zeta(n, k)


def _one_dim(name, real_name, f) -> ComplexModel:
    return ComplexModel(name, real_name, 1, lambda g: [[f(g)]])


def _cyclic_models(n):
    out = []
    for t in range(n):
        if t == 0:
            rn = "1"
        elif 2 * t == n:
            rn = "sigma"
        else:
            rn = f"phi_{min(t, n - t)}"
        out.append(_one_dim(f"lambda_{t}", rn, lambda k, t=t: _z(n, t * k)))
    return out


def _dihedral_models(n):
    def sgn(x):
        return _q(-1 if x % 2 else 1)

    out = [
        _one_dim("1", "1", lambda g: _q(1)),
        _one_dim("sigma", "sigma", lambda g: sgn(g[1])),
    ]
    if n % 2 == 0:
        out.append(_one_dim("tau", "tau", lambda g: sgn(g[0])))
        out.append(_one_dim("sigma_tau", "sigma_tau", lambda g: sgn(g[0] + g[1])))
    S = [[_q(0), _q(1)], [_q(1), _q(0)]]
    for t in range(1, (n + 1) // 2):
        if 2 * t == n:
            continue

        def rho(g, t=t):
            k, b = g
            R = [[_z(n, t * k), _q(0)], [_q(0), _z(n, -t * k)]]
            return matmul(R, S) if b else R

        out.append(ComplexModel(f"phi_{t}", f"phi_{t}", 2, rho))
    return out


def _dicyclic_models(n):
    m = 2 * n
    i4 = _z(4, 1)
    if n % 2 == 0:
        signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        vals = {s: (_q(s[0]), _q(s[1])) for s in signs}
        names = (["1", "sigma_i", "sigma_j", "sigma_k"] if n == 2
                 else ["1", "sigma", "tau", "sigma_tau"])
        real = names
    else:
        signs = [(1, 1), (1, -1), (-1, "i"), (-1, "-i")]
        vals = {(1, 1): (_q(1), _q(1)), (1, -1): (_q(1), _q(-1)),
                (-1, "i"): (_q(-1), i4), (-1, "-i"): (_q(-1), -i4)}
        names = ["1", "sigma", "omega_+", "omega_-"]
        real = ["1", "sigma", "omega", "omega"]
    out = []
    for s, nm, rn in zip(signs, names, real):
        eps, iota = vals[s]
        out.append(_one_dim(nm, rn, lambda g, eps=eps, iota=iota: eps ** g[0] * iota ** g[1]))
    for t in range(1, n):
        X = [[_q(0), _q((-1) ** t)], [_q(1), _q(0)]]

        def rho(g, t=t, X=X):
            k, b = g
            A = [[_z(m, t * k), _q(0)], [_q(0), _z(m, -t * k)]]
            return matmul(A, X) if b else A

        if t % 2 == 0:
            rn = f"psi_{t}"
        else:
            rn = "h" if n == 2 else f"h_{t}"
        out.append(ComplexModel(f"rho_{t}", rn, 2, rho))
    return out


def _klein_models():
    return [
        _one_dim("1", "1", lambda g: _q(1)),
        _one_dim("sigma_i", "sigma_i", lambda g: _q(1 if g in (0, 1) else -1)),
        _one_dim("sigma_j", "sigma_j", lambda g: _q(1 if g in (0, 2) else -1)),
        _one_dim("sigma_k", "sigma_k", lambda g: _q(1 if g in (0, 3) else -1)),
    ]


def _parity(p) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _standard(p) -> Matrix:
    # permutation representation restricted to the sum-zero subspace,
    # basis e_i - e_last
    n = len(p)
    k = n - 1
    cols = []
    for i in range(k):
        v = [0] * n
        v[p[i]] += 1
        v[p[n - 1]] -= 1
        cols.append(v[:k])
    return [[_q(cols[c][r]) for c in range(k)] for r in range(k)]


_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _s4_to_s3(p):
    def canon(pairing):
        return tuple(sorted(tuple(sorted(pair)) for pair in pairing))

    index = {canon(P): i for i, P in enumerate(_PAIRINGS)}
    return tuple(index[canon([(p[a], p[b]) for a, b in P])] for P in _PAIRINGS)


def _symmetric_models(n):
    if n > 4:
        return None
    out = [_one_dim("1", "1", lambda g: _q(1))]
    if n >= 2:
        out.append(_one_dim("sign", "sign", lambda g: _q(_parity(g))))
    if n == 3:
        out.append(ComplexModel("std", "std", 2, _standard))
    if n == 4:
        out.append(ComplexModel("rho2", "rho2", 2, lambda g: _standard(_s4_to_s3(g))))
        out.append(ComplexModel("std", "std", 3, _standard))
        out.append(ComplexModel("std_sign", "std_sign", 3,
                                lambda g: [[x * _parity(g) for x in r] for r in _standard(g)]))
    return out


def complex_models(spec: GroupSpec | None) -> list[ComplexModel] | None:
    """Complete list of irreducible complex models, or None if not catalogued."""
    if spec is None:
        return None
    k, p = spec.kind, spec.params
    if k == "Cn":
        return _cyclic_models(p[0])
    if k == "Dih":
        return _dihedral_models(p[0])
    if k == "Dic":
        return _dicyclic_models(p[0])
    if k == "Klein4":
        return _klein_models()
    if k == "Sym":
        return _symmetric_models(p[0])
    if k == "product":
        factors = [complex_models(s) for s in p]
        if any(f is None for f in factors):
            return None
        out = []
        for combo in itertools.product(*factors):
            def rho(g, combo=combo):
                mat = combo[0](g[0])
                for mdl, x in zip(combo[1:], g[1:]):
                    mat = kron(mat, mdl(x))
                return mat

            deg = 1
            for mdl in combo:
                deg *= mdl.degree
            out.append(ComplexModel("*".join(m.name for m in combo), None, deg, rho))
        return out
    return None


def group_models(G: FiniteGroup) -> list[ComplexModel] | None:
    return complex_models(G.spec)
