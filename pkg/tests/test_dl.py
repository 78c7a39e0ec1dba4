import itertools

from redchar.chartable import dual_character, inner_product, twist_by_automorphism
from redchar.dl import (
    all_labels,
    classify_pair,
    dl_character,
    dl_character_unipotent,
    dl_context,
    epsilon_group,
    epsilon_torus,
    green_function,
    label_stabilizer_order,
    lusztig_series,
    restrict_series,
    unipotent_series,
)
from redchar.groups import cached_group, duality_involution


def all_pairs(ctx):
    """Every (torus type, theta) pair for the context's group."""
    out = []
    from redchar.dl import partitions_of

    for parts in partitions_of(ctx.n):
        ranges = [range(ctx.q**d - 1) for d in parts]
        for exps in itertools.product(*ranges):
            # avoid double counting conjugate pairs with equal parts swapped:
            # enumerate all; the inner-product identity holds regardless
            out.append((tuple(parts), tuple(exps)))
    return out


def twisted_identifications_oracle(q, parts1, exps1, parts2, exps2):
    """#(twisted Weyl elements carrying theta to theta'): independent count.

    Elements are pairs (sigma, t): sigma a degree-preserving bijection of
    torus factors, t_i a Frobenius power on factor i, with
    exps2[sigma(i)] = exps1[i] * q^(t_i) mod (q^(d_i) - 1).
    """
    if sorted(parts1) != sorted(parts2):
        return 0
    n_factors = len(parts1)
    count = 0
    for sigma in itertools.permutations(range(n_factors)):
        if any(parts1[i] != parts2[sigma[i]] for i in range(n_factors)):
            continue
        ways = 1
        for i in range(n_factors):
            mod = q ** parts1[i] - 1
            ways *= sum(
                1
                for t in range(parts1[i])
                if exps1[i] * q**t % mod == exps2[sigma[i]] % mod
            )
        count += ways
    return count


def test_epsilon_signs():
    assert epsilon_group("GL", 2) == 1
    assert epsilon_group("GL", 3) == -1
    assert epsilon_group("SL", 2) == -1
    assert epsilon_torus((2,)) == -1  # Coxeter torus of GL2: F-rank 1
    assert epsilon_torus((1, 1)) == 1
    assert epsilon_torus((3,)) == -1  # fixed space of a 3-cycle: rank 1


def test_unipotent_characters_gl2_gl3():
    ctx = dl_context("GL2(3)")
    uni = ctx.unipotent_characters()
    assert len(uni) == 2  # p(2)
    assert ctx.table.degrees[uni[(2,)]] == 1
    assert ctx.table.degrees[uni[(1, 1)]] == 3
    ctx3 = dl_context("GL3(2)")
    uni3 = ctx3.unipotent_characters()
    assert len(uni3) == 3  # p(3)
    assert ctx3.table.degrees[uni3[(3,)]] == 1
    assert ctx3.table.degrees[uni3[(2, 1)]] == 6  # q^2 + q
    assert ctx3.table.degrees[uni3[(1, 1, 1)]] == 8  # q^3


def test_green_functions_gl2():
    # classical values: Q_split(1) = q+1, Q_split(u) = 1, Q_cox(1) = 1-q
    q = 3
    assert green_function(q, 2, (1, 1), (1, 1)) == q + 1
    assert green_function(q, 2, (1, 1), (2,)) == 1
    assert green_function(q, 2, (2,), (1, 1)) == 1 - q
    assert green_function(q, 2, (2,), (2,)) == 1
    assert green_function(q, 1, (1,), (1,)) == 1


def test_dl_character_examples_gl2_3():
    ctx = dl_context("GL2(3)")
    uni = ctx.unipotent_characters()
    r_split = dl_character(ctx, (1, 1), (0, 0))
    assert r_split.decomposition[uni[(2,)]] == 1
    assert r_split.decomposition[uni[(1, 1)]] == 1
    r_cox = dl_character(ctx, (2,), (0,))
    assert r_cox.decomposition[uni[(2,)]] == 1
    assert r_cox.decomposition[uni[(1, 1)]] == -1
    # general position theta on the Coxeter torus: irreducible cuspidal of
    # degree q - 1 with overall sign -1
    r = dl_character(ctx, (2,), (1,))
    assert r.degree() == -(3 - 1)
    assert sorted(r.decomposition) == [-1] + [0] * 7


def test_theta_one_routes_agree():
    for name in ["GL2(3)", "GL3(2)"]:
        ctx = dl_context(name)
        from redchar.dl import partitions_of

        for parts in partitions_of(ctx.n):
            general = dl_character(ctx, parts, (0,) * len(parts))
            expansion = dl_character_unipotent(ctx, parts)
            assert general.class_function == expansion


def test_exclusion_theorem_gl2_3_exhaustive():
    ctx = dl_context("GL2(3)")
    pairs = all_pairs(ctx)
    chars = {p: dl_character(ctx, *p) for p in pairs}
    for p1, p2 in itertools.combinations_with_replacement(pairs, 2):
        lhs = inner_product(chars[p1].class_function, chars[p2].class_function)
        rhs = twisted_identifications_oracle(3, p1[0], p1[1], p2[0], p2[1])
        assert lhs == rhs, (p1, p2)


def test_exclusion_theorem_gl3_2_exhaustive():
    ctx = dl_context("GL3(2)")
    pairs = all_pairs(ctx)
    chars = {p: dl_character(ctx, *p) for p in pairs}
    for p1, p2 in itertools.combinations_with_replacement(pairs, 2):
        lhs = inner_product(chars[p1].class_function, chars[p2].class_function)
        rhs = twisted_identifications_oracle(2, p1[0], p1[1], p2[0], p2[1])
        assert lhs == rhs, (p1, p2)


def test_classify_pair():
    ctx = dl_context("GL2(3)")
    lab = classify_pair(ctx, (1, 1), (0, 0))
    assert lab.is_central() and lab.orbits[0][1] == 2
    # distinct split characters: two singleton orbits
    lab2 = classify_pair(ctx, (1, 1), (0, 1))
    assert len(lab2.orbits) == 2
    # Coxeter theta of order 8 (not dividing q-1): one size-2 orbit
    lab3 = classify_pair(ctx, (2,), (1,))
    assert len(lab3.orbits) == 1 and lab3.orbits[0][0][0] == 2
    # Coxeter theta of order dividing q-1 collapses into the split label
    lab4 = classify_pair(ctx, (2,), (4,))  # exponent 4: order 2 in F_9^x
    assert lab4.orbits[0][0][0] == 1


def test_series_partition_gl2_3():
    ctx = dl_context("GL2(3)")
    series = lusztig_series(ctx)
    assert len(series) == 6
    assert sorted(len(s.members) for s in series) == [1, 1, 1, 1, 2, 2]
    uni = unipotent_series(ctx)
    assert len(uni.members) == 2
    degs = sorted(ctx.table.degrees[i] for i in uni.members)
    assert degs == [1, 3]  # trivial and Steinberg


def test_series_count_gl3_2():
    ctx = dl_context("GL3(2)")
    series = lusztig_series(ctx)
    assert len(series) == len(all_labels(ctx)) == 4
    assert sum(len(s.members) for s in series) == 6
    assert len(unipotent_series(ctx).members) == 3  # p(3)


def test_series_duality():
    # E(G, s)^vee = E(G, s^-1) as member sets
    for name in ["GL2(3)", "GL3(2)"]:
        ctx = dl_context(name)
        series = lusztig_series(ctx)
        by_label = {s.label: set(s.members) for s in series}
        irr = ctx.table.irreducibles
        for s in series:
            dual_members = set()
            for i in s.members:
                d = dual_character(irr[i])
                j = next(k for k, chi in enumerate(irr) if chi == d)
                dual_members.add(j)
            assert dual_members == by_label[s.label.inverse(ctx.tower)]


def test_torus_lemma_character_level():
    # R_{T, theta} o iota = R_{T, theta^-1} exactly, for every pair (GL2(3))
    ctx = dl_context("GL2(3)")
    iota = duality_involution(ctx.group)
    for parts, exps in all_pairs(ctx):
        r = dl_character(ctx, parts, exps)
        twisted = twist_by_automorphism(r.class_function, iota)
        mods = [ctx.q**d - 1 for d in parts]
        inv = dl_character(ctx, parts, tuple(-c % m for c, m in zip(exps, mods)))
        assert twisted == inv.class_function
        # and at label level: classify(iota-twisted pair) = inverse label
        assert inv.label == r.label.inverse(ctx.tower)


def test_restriction_to_sl2():
    ctx = dl_context("GL2(3)")
    sl = cached_group("SL2(3)")
    series = restrict_series(ctx, sl)
    assert sum(len(s.members) for s in series) == 7
    sizes = sorted(len(s.members) for s in series)
    assert sizes == [1, 2, 2, 2]
    # Steinberg restricts irreducibly and lands in the unipotent series
    st_gl = ctx.unipotent_characters()[(1, 1)]
    uni_sl = next(s for s in series if s.label.is_central())
    assert len(uni_sl.members) == 2
    assert st_gl in uni_sl.restriction_map
    assert len(uni_sl.restriction_map[st_gl]) == 1


def test_restriction_to_sl2_5():
    ctx = dl_context("GL2(5)")
    sl = cached_group("SL2(5)")
    series = restrict_series(ctx, sl)
    assert sum(len(s.members) for s in series) == 9
    # the nonsplit order-2 label splits a cuspidal into the two degree-2s
    split_series = [s for s in series if len(s.members) == 2]
    degree_pairs = sorted(
        tuple(sorted(character_degree(sl, i) for i in s.members)) for s in split_series
    )
    assert (2, 2) in degree_pairs and (3, 3) in degree_pairs


def character_degree(group, idx):
    table = group._table
    return table.degrees[idx]


def test_label_stabilizers():
    ctx = dl_context("GL2(5)")
    tower = ctx.tower
    # central label: every scalar fixes it after scaling? z . {a,a} = {za,za}
    labels = all_labels(ctx)
    for lab in labels:
        stab = label_stabilizer_order(ctx, lab)
        assert (ctx.q - 1) % stab == 0
        # orbit-stabilizer over the scaling action
        orbit = {lab.scaled(tower, z).orbits for z in range(ctx.q - 1)}
        assert len(orbit) * stab == ctx.q - 1


def test_generator_choice_invariance():
    """Regenerating the multiplicative identifications by a Galois twist
    permutes labels but leaves the series partition of Irr unchanged."""
    ctx = dl_context("GL2(3)")
    series = lusztig_series(ctx)
    partition = {frozenset(s.members) for s in series}
    e = ctx.e
    # k coprime to the exponent: acts on theta exponents and on character
    # values by the Galois automorphism zeta -> zeta^k
    for k in [5, 7]:
        twisted = set()
        for parts, exps in all_pairs(ctx):
            r = dl_character(ctx, parts, tuple(c * k for c in exps))
            twisted.add(frozenset(i for i, c in enumerate(r.decomposition) if c))
        # every twisted support set is a member set of the original partition
        for sup in twisted:
            assert any(sup <= block for block in partition)


def test_epsilon_sign_dispatch():
    from redchar.dl import epsilon_sign
    from redchar.groups import maximal_tori

    assert epsilon_sign("GL2(3)") == 1
    assert epsilon_sign("GL3(2)") == -1
    assert epsilon_sign("SL2(5)") == -1
    assert epsilon_sign((2,)) == -1
    tori = maximal_tori(cached_group("GL3(2)"))
    coxeter = next(t for t in tori if t.partition == (3,))
    assert epsilon_sign(coxeter) == -1


def test_green_functions_gl3_closed_forms():
    q = 2
    # split torus: number of fixed Borel subgroups
    assert green_function(q, 3, (1, 1, 1), (1, 1, 1)) == (q + 1) * (q * q + q + 1)
    assert green_function(q, 3, (1, 1, 1), (2, 1)) == 2 * q + 1
    assert green_function(q, 3, (1, 1, 1), (3,)) == 1
    # type (2,1): 1 - q^3 at the identity
    assert green_function(q, 3, (2, 1), (1, 1, 1)) == 1 - q**3
    assert green_function(q, 3, (2, 1), (2, 1)) == 1
    assert green_function(q, 3, (2, 1), (3,)) == 1
    # Coxeter: (q-1)^2 (q+1) at the identity, 1 - q at subregular
    assert green_function(q, 3, (3,), (1, 1, 1)) == (q - 1) ** 2 * (q + 1)
    assert green_function(q, 3, (3,), (2, 1)) == 1 - q
    assert green_function(q, 3, (3,), (3,)) == 1


def test_theta_point_pairing_is_norm_compatible():
    """The character paired with an embedded subfield point must factor
    through the norm as the subfield character of that point: this is what
    makes series membership consistent across torus types."""
    from redchar.dl import field_tower
    from redchar.cyclotomic import zeta

    cases = [(3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 3, 2), (3, 2, 2), (2, 1, 3), (2, 2, 3)]
    for p, k0, d in cases:
        tower = field_tower(p, k0)
        q = tower.q
        big, small = tower.fields[d], tower.fields[1]
        mod, r = q**d - 1, (q**d - 1) // (q - 1)
        for j0 in range(q - 1):
            point = tower.embed_exponent(1, d, j0)
            c = tower.theta_exponent_for_point(d, point)
            # theta_c(y) == chi_{j0}(Norm(y)) for every y
            for ylog in range(mod):
                lhs = zeta(mod, c * ylog)
                norm_code = big.exp[ylog * r % mod]
                # bring the norm back to the small field through the embedding
                pre = next(
                    x
                    for x in range(1, q)
                    if tower.embed_code(1, d, x) == norm_code
                )
                rhs = zeta(q - 1, j0 * small.log[pre]) if q > 2 else zeta(1, 0)
                assert lhs == rhs, (p, k0, d, j0, ylog)


def test_series_partition_q8_q9():
    # regression: inconsistent pairings across torus levels made central
    # labels collect four members instead of two at q = 8
    for name in ["GL2(8)", "GL2(9)"]:
        ctx = dl_context(name)
        series = lusztig_series(ctx)
        q = ctx.q
        assert len(series) == (q - 1) + (q - 1) * (q - 2) // 2 + (q * q - q) // 2
        central = [s for s in series if s.label.is_central()]
        assert len(central) == q - 1
        assert all(len(s.members) == 2 for s in central)


def test_split_torus_dl_equals_borel_induction():
    """Independent oracle: for the split torus, R_T(theta) is induction of
    the inflated character from the Borel subgroup."""
    import itertools
    from fractions import Fraction

    from redchar.chartable import induce_from_subgroup
    from redchar.cyclotomic import zeta

    for name in ["GL2(3)", "GL3(2)", "GL2(4)"]:
        ctx = dl_context(name)
        g = ctx.group
        n, q = g.n, g.q
        parts = (1,) * n
        for exps in itertools.product(range(q - 1), repeat=n):
            def theta_of_borel(idx, exps=exps):
                mat = g.elements[idx]
                acc = zeta(1, 0)
                for i, c in enumerate(exps):
                    dlog = g.field.log[int(mat[i, i])]
                    acc = acc * zeta(q - 1, c * dlog) if q > 2 else acc
                return acc

            induced = induce_from_subgroup(g, g.borel_indices, theta_of_borel)
            r = dl_character(ctx, parts, exps)
            assert r.class_function == induced, (name, exps)


def test_torus_character_carrier():
    from redchar.dl import TorusCharacter

    ctx = dl_context("GL2(3)")
    tc = TorusCharacter(parts=(2,), exps=(1,))
    r = dl_character(ctx, tc)
    assert r.parts == (2,) and r.degree() == -2
