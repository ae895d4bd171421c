import random
from fractions import Fraction

import pytest

from stemrank.characters import (CharacterError, check_orthogonality, character_table, class_inner,
                                 dixon_prime, dixon_table, fs_indicator, real_irreps, table_from_json,
                                 table_to_json, tables_agree)
from stemrank.cyclotomic import CycNum
from stemrank.groups import build_group, spec_from_json

SL23 = {"perm_generators": [[3, 7, 2, 6, 1, 5, 0, 4], [5, 2, 0, 6, 3, 1, 7, 4]]}
A4 = {"perm_generators": [[1, 2, 0, 3], [0, 2, 3, 1]]}


def group(g):
    return build_group(spec_from_json(g) if isinstance(g, dict) else g)


def is_prime(p):
    return p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@pytest.mark.parametrize("order,exponent", [(2, 2), (8, 4), (24, 12), (48, 24), (120, 60)])
def test_dixon_prime(order, exponent):
    p = dixon_prime(order, exponent)
    assert is_prime(p) and p % exponent == 1 and p * p > 4 * order
    # smallest such prime
    assert not any(is_prime(q) and q * q > 4 * order for q in range(exponent + 1, p, exponent))


@pytest.mark.parametrize("g", ["C7", "D8", "Q8", "S4", "Dic3", "C2xS3", SL23, A4])
def test_frobenius_schur_count(g):
    # sum over irreducibles of indicator * degree = number of solutions of g^2 = 1
    G = group(g)
    T = character_table(G)
    involutions = sum(1 for x in range(G.order) if G.mul(x, x) == 0)
    assert sum(fs_indicator(T, i) * d for i, d in enumerate(T.degrees)) == involutions


def test_indicator_types():
    assert sorted(fs_indicator(character_table(build_group("Q8")), i) for i in range(5)) == [-1, 1, 1, 1, 1]
    T = character_table(build_group("C3"))
    assert [fs_indicator(T, i) for i in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("g", [SL23, A4, {"perm_generators": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}])
def test_permutation_character_decomposes(g):
    G = group(g)
    T = dixon_table(G)
    fix = [CycNum.rational(sum(1 for i, x in enumerate(G.labels[c.rep]) if i == x), G.exponent)
           for c in T.classes]
    mults = [class_inner(G, fix, row) for row in T.chars]
    assert all(m.denominator == 1 and m >= 0 for m in mults)
    assert sum(m * d for m, d in zip(mults, T.degrees)) == len(G.labels[0])


def test_dixon_values_numerically_sane():
    G = build_group("C5")
    T = dixon_table(G)
    for row in T.chars:
        for x in row:
            assert abs(abs(complex(x)) - 1) < 1e-9


def test_method_selection():
    G = group(A4)
    assert character_table(G).source == "dixon"
    with pytest.raises(CharacterError):
        character_table(G, "catalog")
    with pytest.raises(ValueError):
        character_table(G, "magic")
    assert character_table(build_group("S4")).source == "catalog"


def test_degrees_and_sizes():
    T = character_table(build_group("S4"))
    assert sorted(T.degrees) == [1, 1, 2, 3, 3]
    T = dixon_table(group(SL23))
    assert sorted(T.degrees) == [1, 1, 1, 2, 2, 2, 3]


def test_real_irreps_of_named_groups():
    names = lambda g: [S.name for S in real_irreps(character_table(build_group(g)))]
    assert names("C2") == ["1", "sigma"]
    assert names("C6") == ["1", "sigma", "phi_1", "phi_2"]
    assert names("C9") == ["1", "phi_1", "phi_2", "phi_3", "phi_4"]
    assert names("K4") == ["1", "sigma_i", "sigma_j", "sigma_k"]
    assert names("Q8") == ["1", "sigma_i", "sigma_j", "sigma_k", "h"]
    assert names("D10") == ["1", "sigma", "phi_1", "phi_2"]


def test_real_irreps_types_and_degrees():
    R = real_irreps(character_table(build_group("Q8")))
    h = R[-1]
    assert h.fs_type == "quaternionic" and h.degree == 4
    R = real_irreps(character_table(build_group("C3")))
    assert R[1].fs_type == "complex-pair" and R[1].degree == 2
    # real characters of a realified pair are rational at every class
    assert all(x.is_rational() for x in R[1].character)


def test_phi_t_values_on_generator():
    # phi_t of C_n takes 2cos(2 pi t/n) on the generator
    import math
    G = build_group("C7")
    R = real_irreps(character_table(G))
    gen_class = G.class_of[1]
    for t in range(1, 4):
        assert abs(float(R[t].character[gen_class]) - 2 * math.cos(2 * math.pi * t / 7)) < 1e-9


def test_json_round_trip_with_shuffled_columns():
    G = build_group("S4")
    T = character_table(G)
    obj = table_to_json(T)
    perm = list(range(len(obj["classes"])))
    random.Random(1).shuffle(perm)
    shuffled = dict(obj)
    shuffled["classes"] = [obj["classes"][k] for k in perm]
    shuffled["chars"] = [[row[k] for k in perm] for row in obj["chars"]]
    U = table_from_json(G, shuffled, "imported")
    assert U.chars == T.chars


def test_import_rejects_bad_tables():
    G = build_group("Q8")
    obj = table_to_json(character_table(G))
    bad = dict(obj)
    bad["chars"] = [list(r) for r in obj["chars"]]
    bad["chars"][1] = bad["chars"][2]
    with pytest.raises(CharacterError):
        table_from_json(G, bad)
    with pytest.raises(CharacterError):
        table_from_json(build_group("D8"), obj)


def test_orthogonality_detects_corruption():
    T = character_table(build_group("S3"))
    rows = list(T.chars)
    rows[1] = tuple(x * 2 for x in rows[1])
    broken = type(T)(T.group, T.classes, rows, "test", [], [])
    with pytest.raises(CharacterError):
        check_orthogonality(broken)


def test_tables_agree_is_order_insensitive():
    G = build_group("D8")
    a, b = character_table(G, "catalog"), dixon_table(G)
    assert tables_agree(a, b)
    # D8 and Q8 share a character table; an abelian group of order 8 does not
    assert tables_agree(a, character_table(build_group("Q8")))
    assert not tables_agree(a, character_table(build_group("C2xC4")))


def test_class_inner_is_rational():
    T = character_table(build_group("C5"))
    assert class_inner(T.group, T.chars[1], T.chars[1]) == Fraction(1)
