"""Regenerate the lattice-claim fixtures in src/stemrank/data/claims/.

Each claim transcribes a printed lattice: the classes whose (oriented or plain)
null lattices are intersected, and the generators as linear expressions in the
irreducibles.  Run from the repository root:

    python scripts/make_claims.py
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "stemrank" / "data" / "claims"


class Vec:
    def __init__(self, basis, coeffs):
        self.basis = basis
        self.c = list(coeffs)

    def _wrap(self, other):
        if isinstance(other, Vec):
            return other
        return Vec(self.basis, [other] + [0] * (len(self.basis) - 1))

    def __add__(self, other):
        o = self._wrap(other)
        return Vec(self.basis, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Vec(self.basis, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, k):
        return Vec(self.basis, [k * a for a in self.c])

    __rmul__ = __mul__


def ev(basis, expr, **subs):
    names = {n: Vec(basis, [int(i == j) for j in range(len(basis))]) for i, n in enumerate(basis) if n != "1"}
    for k, v in subs.items():
        expr = expr.replace("{" + k + "}", v)
    val = eval(expr, {"__builtins__": {}}, names)
    if isinstance(val, int):
        val = Vec(basis, [val] + [0] * (len(basis) - 1))
    return val.c, expr


def claim(basis, label, classes, exprs, kind="N+", **subs):
    gens, shown = [], []
    for e in exprs:
        v, s = ev(basis, e, **subs)
        gens.append(v)
        shown.append(s)
    for k, v in subs.items():
        label = label.replace("{" + k + "}", v)
        classes = [c.replace("{" + k + "}", v) for c in classes]
    return {"label": label, "kind": kind, "classes": classes, "generators": gens, "exprs": shown}


def dedupe(claims):
    seen, out = set(), []
    for c in claims:
        key = (c["kind"], tuple(sorted(c["classes"])), tuple(map(tuple, c["generators"])))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def c2():
    b = ["1", "sigma"]
    return [
        claim(b, "N_e", ["e"], ["1-sigma"], "N"),
        claim(b, "N_C2", ["C2"], ["sigma"], "N"),
        claim(b, "N_C2+", ["C2"], ["sigma"]),
        claim(b, "N_e+", ["e"], ["2*(1-sigma)"]),
        claim(b, "N_e+ & N_C2+", ["e", "C2"], []),
    ]


def cp(p):
    q = (p - 1) // 2
    b = ["1"] + [f"phi_{t}" for t in range(1, q + 1)]
    two_minus = [f"2-phi_{t}" for t in range(1, q + 1)]
    phis = [f"phi_{t}" for t in range(1, q + 1)]
    diffs = [f"phi_1-phi_{t}" for t in range(2, q + 1)]
    cls = f"C{p}"
    return [
        claim(b, "N_e", ["e"], two_minus, "N"),
        claim(b, f"N_{cls}", [cls], phis, "N"),
        claim(b, "N_e+", ["e"], two_minus),
        claim(b, f"N_{cls}+", [cls], phis),
        claim(b, f"N_e+ & N_{cls}+", ["e", cls], diffs),
    ]


def cpn(p, n):
    q = (p ** n - 1) // 2
    b = ["1"] + [f"phi_{t}" for t in range(1, q + 1)]
    labels = {m: ("e" if m == 0 else f"C{p ** m}") for m in range(n + 1)}
    out = []
    for m in range(n + 1):
        pm = p ** m
        exprs = [f"2-phi_{i}" for i in range(1, q + 1) if i % pm == 0]
        exprs += [f"phi_{j}" for j in range(1, q + 1) if j % pm]
        out.append(claim(b, f"N_{labels[m]}+", [labels[m]], exprs))
        out.append(claim(b, f"N_{labels[m]}", [labels[m]], exprs, "N"))
    for k in range(n + 1):
        for m in range(k + 1, n + 1):
            pk, pm = p ** k, p ** m
            exprs = [f"2-phi_{i}" for i in range(1, q + 1) if i % pm == 0]
            exprs += [f"phi_{j}" for j in range(1, q + 1) if j % pk]
            exprs += [f"phi_{pk}-phi_{l}" for l in range(1, q + 1) if l > pk and l % pk == 0 and l % pm]
            out.append(claim(b, f"N_{labels[k]}+ & N_{labels[m]}+", [labels[k], labels[m]], exprs))
    return out


PERMS = list(itertools.permutations("ijk"))


def k4():
    b = ["1", "sigma_i", "sigma_j", "sigma_k"]
    out = [
        claim(b, "N_e", ["e"], ["1-sigma_i", "1-sigma_j", "1-sigma_k"], "N"),
        claim(b, "N_K", ["K4"], ["sigma_i", "sigma_j", "sigma_k"], "N"),
        claim(b, "N_e+", ["e"], ["2*(1-sigma_i)", "sigma_i-sigma_j", "sigma_i-sigma_k"]),
        claim(b, "N_K+", ["K4"], ["sigma_i", "sigma_j", "sigma_k"]),
        claim(b, "N_e+ & N_K+", ["e", "K4"], ["sigma_i-sigma_j", "sigma_i-sigma_k"]),
    ]
    for a, a1, a2 in PERMS:
        s = dict(a=a, b=a1, c=a2)
        out += [
            claim(b, "N_<{a}>", ["<{a}>"], ["1-sigma_{a}", "sigma_{b}", "sigma_{c}"], "N", **s),
            claim(b, "N_<{a}>+", ["<{a}>"], ["2*(1-sigma_{a})", "sigma_{b}", "sigma_{c}"], **s),
            claim(b, "N_e+ & N_<{a}>+", ["e", "<{a}>"], ["2*(1-sigma_{a})", "sigma_{a}-sigma_{b}"], **s),
            claim(b, "N_<{a}>+ & N_<{b}>+", ["<{a}>", "<{b}>"],
                  ["2*(1-sigma_{a}-sigma_{b})", "sigma_{c}"], **s),
            claim(b, "N_<{a}>+ & N_K+", ["<{a}>", "K4"], ["sigma_{b}", "sigma_{c}"], **s),
            claim(b, "N_e+ & N_<{a}>+ & N_<{b}>+", ["e", "<{a}>", "<{b}>"], [], **s),
            claim(b, "N_<{a}>+ & N_<{c}>+ & N_K+", ["<{a}>", "<{c}>", "K4"], ["sigma_{b}"], **s),
            claim(b, "N_e+ & N_<{a}>+ & N_K+", ["e", "<{a}>", "K4"], ["sigma_{a}-sigma_{b}"], **s),
            claim(b, "N_<{a}>+ & N_<{b}>+ & N_<{c}>+", ["<{a}>", "<{b}>", "<{c}>"],
                  ["2*(1-sigma_{a}-sigma_{b}-sigma_{c})"], **s),
        ]
    allc = ["e", "<i>", "<j>", "<k>", "K4"]
    for sub in itertools.combinations(allc, 4):
        out.append(claim(b, " & ".join(f"N_{c}+" for c in sub), list(sub), []))
    out.append(claim(b, " & ".join(f"N_{c}+" for c in allc), allc, []))
    return dedupe(out)


def dihedral(p):
    q = (p - 1) // 2
    b = ["1", "sigma"] + [f"phi_{t}" for t in range(1, q + 1)]
    ts = range(1, q + 1)
    diffs = [f"phi_1-phi_{t}" for t in range(2, q + 1)]
    cp_, d = f"C{p}", f"D{2 * p}"
    return [
        claim(b, "N_e", ["e"], ["1-sigma"] + [f"2-phi_{t}" for t in ts], "N"),
        claim(b, "N_C2", ["C2"], ["1-sigma"] + [f"1-phi_{t}" for t in ts], "N"),
        claim(b, f"N_{cp_}", [cp_], ["1-sigma"] + [f"phi_{t}" for t in ts], "N"),
        claim(b, f"N_{d}", [d], ["sigma"] + [f"phi_{t}" for t in ts], "N"),
        claim(b, "N_C2+", ["C2"], ["1-sigma"] + [f"1-phi_{t}" for t in ts]),
        claim(b, f"N_{d}+", [d], ["sigma"] + [f"phi_{t}" for t in ts]),
        claim(b, "N_e+", ["e"], ["2*(1-sigma)", "2*(2-phi_1)"] + diffs),
        claim(b, f"N_{cp_}+", [cp_], ["2*(1-sigma)", "2*phi_1"] + diffs),
        claim(b, "N_e+ & N_C2+", ["e", "C2"], ["2*(1-sigma)"] + diffs),
        claim(b, f"N_e+ & N_{cp_}+", ["e", cp_], ["2*(1-sigma)"] + diffs),
        claim(b, f"N_e+ & N_{d}+", ["e", d], ["4*sigma-2*phi_1"] + diffs),
        claim(b, f"N_C2+ & N_{cp_}+", ["C2", cp_], ["2*(1-sigma)"] + diffs),
        claim(b, f"N_C2+ & N_{d}+", ["C2", d], ["sigma-phi_1"] + diffs),
        claim(b, f"N_{cp_}+ & N_{d}+", [cp_, d], [f"phi_{t}" for t in ts]),
        claim(b, f"N_e+ & N_C2+ & N_{cp_}+", ["e", "C2", cp_], ["2*(1-sigma)"] + diffs),
        claim(b, f"N_e+ & N_C2+ & N_{d}+", ["e", "C2", d], diffs),
        claim(b, f"N_e+ & N_{cp_}+ & N_{d}+", ["e", cp_, d], diffs),
        claim(b, f"N_C2+ & N_{cp_}+ & N_{d}+", ["C2", cp_, d], diffs),
        claim(b, f"N_e+ & N_C2+ & N_{cp_}+ & N_{d}+", ["e", "C2", cp_, d], diffs),
    ]


def q8():
    b = ["1", "sigma_i", "sigma_j", "sigma_k", "h"]
    T = "2*(1-sigma_i-sigma_j-sigma_k)"
    out = [
        claim(b, "N_e", ["e"], ["1-sigma_i", "1-sigma_j", "1-sigma_k", "4-h"], "N"),
        claim(b, "N_C2", ["C2"], ["1-sigma_i", "1-sigma_j", "1-sigma_k", "h"], "N"),
        claim(b, "N_Q", ["Q8"], ["sigma_i", "sigma_j", "sigma_k", "h"], "N"),
        claim(b, "N_e+", ["e"], ["2*(1-sigma_i)", "sigma_i-sigma_j", "sigma_i-sigma_k", "4-h"]),
        claim(b, "N_C2+", ["C2"], ["2*(1-sigma_i)", "sigma_i-sigma_j", "sigma_i-sigma_k", "h"]),
        claim(b, "N_Q+", ["Q8"], ["sigma_i", "sigma_j", "sigma_k", "h"]),
        claim(b, "N_e+ & N_C2+", ["e", "C2"], ["2*(1-sigma_i)", "sigma_i-sigma_j", "sigma_i-sigma_k"]),
        claim(b, "N_e+ & N_Q+", ["e", "Q8"], ["sigma_i-sigma_j", "sigma_i-sigma_k", "4*sigma_i-h"]),
        claim(b, "N_C2+ & N_Q+", ["C2", "Q8"], ["sigma_i-sigma_j", "sigma_i-sigma_k", "h"]),
        claim(b, "N_e+ & N_C2+ & N_Q+", ["e", "C2", "Q8"], ["sigma_i-sigma_j", "sigma_i-sigma_k"]),
        claim(b, "N_e+ & N_C2+ & N_<i>+ & N_<j>+ & N_<k>+", ["e", "C2", "<i>", "<j>", "<k>"], [T]),
        claim(b, "N_e+ & N_<i>+ & N_<j>+ & N_<k>+ & N_Q+", ["e", "<i>", "<j>", "<k>", "Q8"], []),
        claim(b, "N_C2+ & N_<i>+ & N_<j>+ & N_<k>+ & N_Q+", ["C2", "<i>", "<j>", "<k>", "Q8"], ["h"]),
        claim(b, "all six", ["e", "C2", "<i>", "<j>", "<k>", "Q8"], []),
    ]
    for a, a1, a2 in PERMS:
        s = dict(a=a, b=a1, c=a2)
        out += [
            claim(b, "N_<{a}>", ["<{a}>"], ["1-sigma_{a}", "sigma_{b}", "sigma_{c}", "h"], "N", **s),
            claim(b, "N_<{a}>+", ["<{a}>"], ["2*(1-sigma_{a})", "sigma_{b}", "sigma_{c}", "h"], **s),
            claim(b, "N_e+ & N_<{a}>+", ["e", "<{a}>"],
                  ["2*(1-sigma_{a})", "sigma_{b}-sigma_{c}", "h-4*sigma_{b}"], **s),
            claim(b, "N_C2+ & N_<{a}>+", ["C2", "<{a}>"], ["2*(1-sigma_{a})", "sigma_{b}-sigma_{c}", "h"], **s),
            claim(b, "N_<{a}>+ & N_<{b}>+", ["<{a}>", "<{b}>"],
                  ["2*(1-sigma_{a}-sigma_{b})", "sigma_{c}", "h"], **s),
            claim(b, "N_<{a}>+ & N_Q+", ["<{a}>", "Q8"], ["sigma_{b}", "sigma_{c}", "h"], **s),
            claim(b, "N_e+ & N_C2+ & N_<{a}>+", ["e", "C2", "<{a}>"],
                  ["2*(1-sigma_{a})", "sigma_{b}-sigma_{c}"], **s),
            claim(b, "N_e+ & N_<{a}>+ & N_Q+", ["e", "<{a}>", "Q8"], ["sigma_{b}-sigma_{c}", "h-4*sigma_{b}"], **s),
            claim(b, "N_e+ & N_<{a}>+ & N_<{b}>+", ["e", "<{a}>", "<{b}>"], [T, "h-4*sigma_{c}"], **s),
            claim(b, "N_C2+ & N_<{a}>+ & N_Q+", ["C2", "<{a}>", "Q8"], ["sigma_{b}-sigma_{c}", "h"], **s),
            claim(b, "N_C2+ & N_<{a}>+ & N_<{b}>+", ["C2", "<{a}>", "<{b}>"], [T, "h"], **s),
            claim(b, "N_<{a}>+ & N_<{b}>+ & N_Q+", ["<{a}>", "<{b}>", "Q8"], ["sigma_{c}", "h"], **s),
            claim(b, "N_<i>+ & N_<j>+ & N_<k>+", ["<i>", "<j>", "<k>"], [T, "h"]),
            claim(b, "N_e+ & N_C2+ & N_<{a}>+ & N_Q+", ["e", "C2", "<{a}>", "Q8"], ["sigma_{b}-sigma_{c}"], **s),
            claim(b, "N_e+ & N_C2+ & N_<{a}>+ & N_<{b}>+", ["e", "C2", "<{a}>", "<{b}>"], [T], **s),
            claim(b, "N_e+ & N_<i>+ & N_<j>+ & N_<k>+", ["e", "<i>", "<j>", "<k>"], [T]),
            claim(b, "N_C2+ & N_<{a}>+ & N_<{b}>+ & N_Q+", ["C2", "<{a}>", "<{b}>", "Q8"], ["h"], **s),
            claim(b, "N_C2+ & N_<i>+ & N_<j>+ & N_<k>+", ["C2", "<i>", "<j>", "<k>"], [T, "h"]),
            claim(b, "N_<i>+ & N_<j>+ & N_<k>+ & N_Q+", ["<i>", "<j>", "<k>", "Q8"], ["h"]),
            claim(b, "N_e+ & N_C2+ & N_<{a}>+ & N_<{b}>+ & N_Q+", ["e", "C2", "<{a}>", "<{b}>", "Q8"], [], **s),
        ]
    return dedupe(out)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    sets = {"C2": c2(), "K4": k4(), "Q8": q8(), "C9": cpn(3, 2)}
    for p in (3, 5, 7):
        sets[f"C{p}"] = cp(p)
    for p in (3, 5, 7):
        sets[f"D{2 * p}"] = dihedral(p)
    for name, claims in sets.items():
        path = OUT / f"{name}.json"
        path.write_text(json.dumps({"group": name, "claims": claims}, indent=1) + "\n")
        print(f"{path}: {len(claims)} claims")


if __name__ == "__main__":
    main()
