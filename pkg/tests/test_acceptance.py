"""Acceptance criteria 1-11.

Each test prints one ``criterion N: PASS|FAIL`` line as it finishes, and the
whole set is repeated in the terminal summary.
"""

import itertools
import os
import random
from contextlib import contextmanager

from conftest import ACCEPTANCE_RESULTS
from stemrank import lattice as zl
from stemrank.characters import character_table, check_orthogonality, dixon_table, tables_agree
from stemrank.cli import CATALOG_SUITE, run
from stemrank.groups import build_group, spec_from_json, weyl_group
from stemrank.orientation import exterior_det, is_oriented, minus_one_multiplicity, weyl_fixed_character
from stemrank.strata import (MackeyCoefficients, analyze, intersection, load_claims, mackey_rank,
                             rank_at, verify_claims)

FULL_BOX = os.environ.get("STEMRANK_FULL_ACCEPTANCE") == "1"


@contextmanager
def criterion(n, title):
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS[n] = ("FAIL", title)
        print(f"\ncriterion {n}: FAIL  {title}")
        raise
    ACCEPTANCE_RESULTS[n] = ("PASS", title)
    print(f"\ncriterion {n}: PASS  {title}")


def box(r, lo, hi):
    return itertools.product(range(lo, hi + 1), repeat=r)


# -- 1 ---------------------------------------------------------------------

def c2_formula(a, b):
    if a == b == 0:
        return 2
    on_sigma = a == 0
    on_regular = a == -b and a % 2 == 0
    return 1 if on_sigma or on_regular else 0


def test_criterion_01_c2_proposition():
    with criterion(1, "C2 piecewise rank formula on [-8,8]^2"):
        A = analyze("C2")
        assert A.names == ["1", "sigma"]
        for a, b in box(2, -8, 8):
            assert rank_at(A, (a, b)).rank == c2_formula(a, b), (a, b)


# -- 2 ---------------------------------------------------------------------

def test_criterion_02_cp_propositions():
    with criterion(2, "C_p propositions for p = 3, 5, 7 on [-4,4]^(q+1)"):
        for p in (3, 5, 7):
            A = analyze(f"C{p}")
            q = (p - 1) // 2
            assert A.names == ["1"] + [f"phi_{t}" for t in range(1, q + 1)]
            for c in A.classes:
                assert c.plus == c.null
            for alpha in box(q + 1, -4, 4):
                a0, rest = alpha[0], alpha[1:]
                in_e = a0 + 2 * sum(rest) == 0          # Z{2 - phi_t}
                in_g = a0 == 0                          # Z{phi_t}
                in_diff = a0 == 0 and sum(rest) == 0    # Z{phi_1 - phi_t}
                expected = 2 if in_diff else 1 if (in_e or in_g) else 0
                assert rank_at(A, alpha).rank == expected, (p, alpha)


# -- 3 ---------------------------------------------------------------------

def test_criterion_03_c9_lattices():
    with criterion(3, "C9 lattices and pairwise intersections by HNF equality"):
        A = analyze("C9")
        r = A.rank  # 1, phi_1..phi_4
        q = r - 1

        def vec(**kw):
            v = [0] * r
            for k, x in kw.items():
                v[int(k[1:]) if k != "one" else 0] += x
            return v

        def two_minus(i):
            v = [0] * r
            v[0], v[i] = 2, -1
            return v

        def phi(i):
            v = [0] * r
            v[i] = 1
            return v

        def displayed(m):
            pm = 3 ** m
            gens = [two_minus(i) for i in range(1, q + 1) if i % pm == 0]
            gens += [phi(j) for j in range(1, q + 1) if j % pm]
            return zl.hnf(gens, r)

        labels = {0: "e", 1: "C3", 2: "C9"}
        for m in range(3):
            assert A.class_analysis(labels[m]).plus == displayed(m), m

        # N_{p^k}+ cap N_{p^m}+ for k < m
        for k, m in itertools.combinations(range(3), 2):
            pk, pm = 3 ** k, 3 ** m
            gens = [two_minus(i) for i in range(1, q + 1) if i % pm == 0]
            gens += [phi(j) for j in range(1, q + 1) if j % pk]
            gens += [[x - y for x, y in zip(phi(pk), phi(l))]
                     for l in range(pk + 1, q + 1) if l % pk == 0 and l % pm]
            assert intersection(A, [labels[k], labels[m]]) == zl.hnf(gens, r), (k, m)


# -- 4 ---------------------------------------------------------------------

def test_criterion_04_zero_degree_rank():
    with criterion(4, "r_0 equals the number of subgroup classes"):
        expected = {"C2": 2, "C3": 2, "K4": 5, "D6": 4, "D10": 4, "Q8": 6, "C9": 3}
        for g, n in expected.items():
            A = analyze(g)
            assert rank_at(A, [0] * A.rank).rank == n == len(A.classes), g


# -- 5 ---------------------------------------------------------------------

def test_criterion_05_spot_ranks():
    with criterion(5, "spot ranks for Q8 and K4, and alpha.d_G = 0 gives rank >= 1"):
        Q = analyze("Q8")
        assert rank_at(Q, Q.vector({"h": 1})).rank == 5
        K = analyze("K4")
        assert rank_at(K, K.vector({"sigma_j": 1})).rank == 3
        assert rank_at(K, K.vector({"1": 2, "sigma_i": -2, "sigma_j": -2, "sigma_k": -2})).rank == 3
        rng = random.Random(2024)
        for g in CATALOG_SUITE:
            A = analyze(g)
            top = A.classes[-1]
            assert top.order == A.group.order and top.weyl_order == 1
            for _ in range(200):
                alpha = [rng.randint(-6, 6) for _ in range(A.rank)]
                # push alpha into N_G by adjusting the trivial coordinate
                alpha[0] -= sum(a * d for a, d in zip(alpha, top.dims))
                assert rank_at(A, alpha).rank >= 1, (g, alpha)


# -- 6 ---------------------------------------------------------------------

def test_criterion_06_verification_harness(capsys):
    from importlib import resources
    import json

    with criterion(6, "claim generators checked against the matrix oracle"):
        total_gens = 0
        lines = []
        for g in ["K4", "D6", "D10", "D14", "Q8"]:
            A = analyze(g)
            obj = json.loads((resources.files("stemrank") / "data" / "claims" / f"{g}.json").read_text())
            R = verify_claims(A, load_claims(A, obj))
            assert R.oracle_available
            for c in R.checks:
                for gen in c.generators:
                    total_gens += 1
                    assert gen.oracle is not None
                    # the oracle decides membership independently of the lattice route
                    assert gen.oracle == gen.computed, (g, c.claim.label, gen.vector)
            assert R.oracle_disagreements == []
            for label, detail in R.claim_disagreements:
                lines.append(f"{g} {label}: {detail}")
        assert total_gens > 100
        with capsys.disabled():
            print(f"\n{len(lines)} disagreements with printed lists:")
            for line in lines:
                print("  " + line)
        # the disputed claims flagged for review are among them
        assert any(line.startswith("K4 N_e+:") for line in lines)
        assert any(line.startswith("Q8 N_e+:") for line in lines)
        assert any(line.startswith("D6 N_e+:") for line in lines)


# -- 7 ---------------------------------------------------------------------

def test_criterion_07_orientation_properties():
    with criterion(7, "orientation properties on 1000 random degrees per catalog group"):
        rng = random.Random(7)
        kinds = set()
        for g in CATALOG_SUITE:
            A = analyze(g)
            # realifications of complex irreps: complex-pair and quaternionic types
            realified = [S.index - 1 for S in A.irreps if S.fs_type in ("complex-pair", "quaternionic")]
            kinds.update(A.irreps[i].fs_type for i in realified)
            e = A.classes[0]
            assert e.order == 1
            for _ in range(1000):
                alpha = [rng.randint(-9, 9) for _ in range(A.rank)]
                beta = [rng.randint(-9, 9) for _ in range(A.rank)]
                gamma = [a + b for a, b in zip(alpha, beta)]
                for c in A.classes:
                    assert is_oriented([2 * a for a in alpha], c.signs)
                    sa, sb, sg = c.sign_of(alpha), c.sign_of(beta), c.sign_of(gamma)
                    assert sg == tuple(x * y for x, y in zip(sa, sb))
                    if c.weyl_order % 2:
                        assert c.oriented(alpha)
                assert e.oriented([a if i in realified else 0 for i, a in enumerate(alpha)])
        assert kinds == {"complex-pair", "quaternionic"}


# -- 8 ---------------------------------------------------------------------

def test_criterion_08_det_triple_agreement():
    with criterion(8, "determinant by multiplicity, exterior powers and explicit matrices"):
        triples = 0
        for g in CATALOG_SUITE:
            A = analyze(g)
            G = A.group
            oracle = A.oracle()
            for c, K in zip(A.classes, G.subgroup_classes):
                W = weyl_group(G, K)
                data = oracle.orientation(K, c.generators)
                assert data.dims == c.dims
                for i, S in enumerate(A.irreps):
                    psi = weyl_fixed_character(G, S, K, W)
                    for k, n in enumerate(c.generators):
                        w = W.projection[n]
                        order = W.group.element_orders[w]
                        by_mult = 1 if order % 2 else (-1) ** minus_one_multiplicity(W.group, psi, w)
                        by_ext = exterior_det(W.group, psi, w)
                        by_matrix = data.signs[i][k]
                        assert by_mult == by_ext == by_matrix == c.signs[i][k], (g, c.label, S.name, k)
                        triples += 1
        assert triples > 100


# -- 9 ---------------------------------------------------------------------

SMALL_GROUPS = [
    "SL(2,3)", "A4", "C2xS4", "D24", "Dic6", "C4xC4", "C2xQ8", "S4", "C3xS3", "D48", "Dic12",
    "C6xC8", "C2xC2xC2xC2xC3",
]
PERM = {
    "SL(2,3)": {"perm_generators": [[3, 7, 2, 6, 1, 5, 0, 4], [5, 2, 0, 6, 3, 1, 7, 4]]},
    "A4": {"perm_generators": [[1, 2, 0, 3], [0, 2, 3, 1]]},
}


def test_criterion_09_dixon_schneider():
    with criterion(9, "Dixon-Schneider against catalog tables; exact orthogonality up to order 48"):
        for g in [f"C{n}" for n in range(1, 13)] + [f"Dih({n})" for n in range(1, 7)] + ["K4", "Q8", "S3"]:
            G = build_group(g)
            assert tables_agree(dixon_table(G), character_table(G, "catalog")), g
        for g in SMALL_GROUPS + list(CATALOG_SUITE):
            G = build_group(spec_from_json(PERM[g]) if g in PERM else g)
            if G.order > 48:
                continue
            T = dixon_table(G)
            check_orthogonality(T)
            assert sum(d * d for d in T.degrees) == G.order
            assert len(T.chars) == len(T.classes)


# -- 10 --------------------------------------------------------------------

def slice_tsv(capsys, *argv):
    assert run(list(argv)) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "i\tj\trank\twitnesses"
    out = {}
    for row in rows[1:]:
        i, j, r, w = row.split("\t")
        out[int(i), int(j)] = (int(r), w)
    assert len(out) == 21 * 21
    return out


def test_criterion_10_figures(capsys):
    with criterion(10, "slice C2 and slice C3 TSVs match the figure lattices over -10..10"):
        pts = slice_tsv(capsys, "--no-cache", "slice", "C2", "--axes", "1,sigma", "--range", "-10..10")
        # witness ids: 0 is e (blue), 1 is C2 (black)
        for (a, b), (r, w) in pts.items():
            blue = a == -b and a % 2 == 0         # Z{2(1 - sigma)}
            black = a == 0                        # Z{sigma}
            assert r == blue + black, (a, b)
            assert w == ";".join(str(x) for x, on in ((0, blue), (1, black)) if on)
        pts = slice_tsv(capsys, "--no-cache", "slice", "C3", "--axes", "1,phi_1", "--range", "-10..10")
        for (a, b), (r, w) in pts.items():
            blue = a + 2 * b == 0                 # Z{2 - phi_1}
            black = a == 0                        # Z{phi_1}
            assert r == blue + black, (a, b)
            assert w == ";".join(str(x) for x, on in ((0, blue), (1, black)) if on)


# -- 11 --------------------------------------------------------------------

def test_criterion_11_mackey():
    title = ("Burnside coefficients reproduce rank_at and zero coefficients give 0; full [-4,4] box "
             + ("for every group" if FULL_BOX else "for rank <= 5, 20000 samples above"))
    with criterion(11, title):
        rng = random.Random(11)
        for g in CATALOG_SUITE:
            A = analyze(g)
            B, Z = MackeyCoefficients.burnside(A), MackeyCoefficients.zero(A)
            if FULL_BOX or A.rank <= 5:
                points = box(A.rank, -4, 4)
            else:
                points = (tuple(rng.randint(-4, 4) for _ in range(A.rank)) for _ in range(20000))
            for alpha in points:
                assert mackey_rank(A, alpha, B) == rank_at(A, alpha).rank, (g, alpha)
                assert mackey_rank(A, alpha, Z) == 0
