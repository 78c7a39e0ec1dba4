from fractions import Fraction

from redchar.chartable import (
    ClassFunction,
    character_table,
    dual_character,
    find_table_prime,
    induce_from_subgroup,
    inner_product,
    restrict_between_groups,
    trivial_character,
    twist_by_automorphism,
    twisted_fs_indicator,
)
from redchar.cyclotomic import CyclotomicNumber
from redchar.groups import (
    adjoint_action_representatives,
    build_group,
    cached_group,
    duality_involution,
    identity_automorphism,
)



def table(name):
    group = cached_group(name)
    cached = getattr(group, "_table", None)
    if cached is None:
        cached = character_table(group)
        group._table = cached
    return cached


def test_trivial_group_table():
    t = character_table(build_group("GL1(2)"))
    assert len(t) == 1 and t.degrees == [1]


def test_sl2_3_table():
    t = table("SL2(3)")
    assert sorted(t.degrees) == [1, 1, 1, 2, 2, 2, 3]
    t.verify_degree_sum()
    t.verify_orthogonality()


def test_gl2_3_table():
    t = table("GL2(3)")
    assert len(t) == 8
    assert sum(d * d for d in t.degrees) == 48
    t.verify_orthogonality()
    # frozen from this table computation (cross-checked by the two exact
    # invariants above): the degree multiset of GL2(3)
    assert sorted(t.degrees) == [1, 1, 2, 2, 2, 3, 3, 4]


def test_sl2_5_table():
    t = table("SL2(5)")
    assert sorted(t.degrees) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    t.verify_orthogonality()


def test_gl3_2_table():
    t = table("GL3(2)")
    assert sorted(t.degrees) == [1, 3, 3, 6, 7, 8]
    t.verify_orthogonality()


def test_find_table_prime():
    ell = find_table_prime(24, 48)
    assert ell > 96 and (ell - 1) % 24 == 0
    assert ell == 97


def test_inner_products_and_duals():
    t = table("GL2(3)")
    g = t.group
    for i, chi in enumerate(t.irreducibles):
        assert inner_product(chi, chi) == 1
        dual = dual_character(chi)
        assert dual in t.irreducibles or any(
            dual == other for other in t.irreducibles
        )
        assert dual_character(dual) == chi
    # trivial and regular characters
    triv = trivial_character(g)
    assert inner_product(triv, triv) == 1
    reg_values = [0] * g.conjugacy().n_classes
    reg_values[int(g.conjugacy().cls[g.identity_idx])] = g.order
    reg = ClassFunction(g, reg_values)
    assert inner_product(reg, triv) == 1
    for chi, d in zip(t.irreducibles, t.degrees):
        assert inner_product(reg, chi) == d


def test_steinberg_is_self_dual():
    t = table("GL2(3)")
    # Steinberg: the degree-q constituent of Ind_B(1)
    g = t.group
    ind_b = induce_from_subgroup(
        g, g.borel_indices, lambda idx: CyclotomicNumber.one()
    )
    assert ind_b.degree.as_int() == 4
    decomp = [inner_product(ind_b, chi).as_rational() for chi in t.irreducibles]
    assert sorted(x for x in decomp if x) == [1, 1]
    steinberg = next(
        chi
        for chi, m in zip(t.irreducibles, decomp)
        if m == 1 and chi.degree.as_int() == 3
    )
    assert dual_character(steinberg) == steinberg


def test_induction_from_unipotent_and_reciprocity():
    g = cached_group("GL2(3)")
    t = table("GL2(3)")
    ind_u = induce_from_subgroup(g, g.unipotent_indices, lambda idx: CyclotomicNumber.one())
    assert ind_u.degree.as_int() == 16  # 48 / 3
    assert inner_product(ind_u, trivial_character(g)) == 1
    # Frobenius reciprocity against restriction to U (rank-1 check):
    # <Ind 1, chi> = <1, Res chi> = average of chi over U
    for chi in t.irreducibles:
        lhs = inner_product(ind_u, chi)
        cls = g.conjugacy().cls
        acc = CyclotomicNumber.zero()
        for idx in g.unipotent_indices:
            acc = acc + chi.values[int(cls[idx])]
        assert lhs == acc * Fraction(1, len(g.unipotent_indices))


def test_twist_by_automorphism():
    t = table("SL2(3)")
    g = t.group
    ident = identity_automorphism(g)
    for chi in t.irreducibles:
        assert twist_by_automorphism(chi, ident) == chi
    # twisting by an inner automorphism fixes every class function
    inner = adjoint_action_representatives(g)[0]
    for chi in t.irreducibles:
        assert twist_by_automorphism(chi, inner) == chi
    # the nontrivial adjoint representative permutes the three linear
    # characters of SL2(3) among themselves preserving degrees
    outer = adjoint_action_representatives(g)[1]
    perm = {}
    for i, chi in enumerate(t.irreducibles):
        img = twist_by_automorphism(chi, outer)
        j = next(k for k, other in enumerate(t.irreducibles) if other == img)
        perm[i] = j
        assert t.degrees[i] == t.degrees[j]
    assert sorted(perm.values()) == list(range(7))


def test_twisted_fs_indicator_gl2_3():
    t = table("GL2(3)")
    iota = duality_involution(t.group)
    for chi in t.irreducibles:
        assert twisted_fs_indicator(chi, iota) == 1


def test_twisted_involution_count_identity():
    # sum over irreducibles of eps(chi) * chi(1) = #{g : iota(g) = g^-1}
    for name in ["GL2(3)", "SL2(3)"]:
        t = table(name)
        g = t.group
        iota = duality_involution(g)
        total = CyclotomicNumber.zero()
        for chi in t.irreducibles:
            total = total + twisted_fs_indicator(chi, iota) * chi.degree
        count = sum(
            1 for idx in range(g.order) if iota.apply(idx) == int(g.inv_perm[idx])
        )
        assert total == count


def test_restriction_gl2_to_sl2():
    gl = cached_group("GL2(3)")
    sl = cached_group("SL2(3)")
    t = table("GL2(3)")
    ts = table("SL2(3)")
    for chi in t.irreducibles:
        res = restrict_between_groups(chi, sl)
        norm = inner_product(res, res).as_rational()
        assert norm in (1, 2)
        decomp = [inner_product(res, s).as_rational() for s in ts.irreducibles]
        assert all(m in (0, 1) for m in decomp)  # multiplicity free
        assert sum(m * s.degree.as_int() for m, s in zip(decomp, ts.irreducibles)) == (
            chi.degree.as_int()
        )


def test_modular_decomposition_matches_exact():
    t = table("GL2(3)")
    g = t.group
    ind_b = induce_from_subgroup(g, g.borel_indices, lambda idx: CyclotomicNumber.one())
    coeffs = t.decompose_integers(ind_b)
    exact = [inner_product(ind_b, chi).as_rational() for chi in t.irreducibles]
    assert [Fraction(c) for c in coeffs] == exact


def test_sl3_4_table_runs_and_is_orthogonal():
    import time

    start = time.time()
    t = table("SL3(4)")
    elapsed = time.time() - start
    assert elapsed < 60
    assert len(t) == 28
    assert sum(d * d for d in t.degrees) == 60480
    t.verify_orthogonality()


def test_dual_commutes_with_twist():
    # dual o twist = twist o dual as literal value lists, per automorphism
    from redchar.groups import adjoint_action_representatives, transpose_inverse

    for name in ["GL2(3)", "SL2(3)"]:
        t = table(name)
        autos = [duality_involution(t.group), transpose_inverse(t.group)]
        autos += adjoint_action_representatives(t.group)
        for chi in t.irreducibles:
            for sigma in autos:
                lhs = dual_character(twist_by_automorphism(chi, sigma))
                rhs = twist_by_automorphism(dual_character(chi), sigma)
                assert lhs == rhs


def test_frobenius_reciprocity_random_pairs():
    import random

    g = cached_group("GL2(3)")
    t = table("GL2(3)")
    ind_b = induce_from_subgroup(g, g.borel_indices, lambda idx: CyclotomicNumber.one())
    cls = g.conjugacy().cls
    rng = random.Random(11)
    for _ in range(20):
        chi = rng.choice(t.irreducibles)
        # <Ind_B(1), chi>_G = <1, Res_B chi>_B
        lhs = inner_product(ind_b, chi)
        acc = CyclotomicNumber.zero()
        for idx in g.borel_indices:
            acc = acc + chi.values[int(cls[idx])].conjugate()
        assert lhs == acc * Fraction(1, len(g.borel_indices))


def test_table_json_deterministic_across_builds():
    import json
    from redchar.groups import build_group
    from redchar.chartable import character_table

    a = character_table(build_group("GL2(3)")).to_json()
    b = character_table(build_group("GL2(3)")).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_table_prime_bound_refusal():
    import pytest
    from redchar.chartable import NoTablePrime, find_table_prime

    with pytest.raises(NoTablePrime, match="below the bound"):
        find_table_prime(24, 48, bound=96)
