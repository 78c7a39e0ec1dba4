"""Jordan decomposition of characters: the multiplicity-matching bijection
for GL_n, the disconnected-center surjection for SL_n through the regular
embedding SL_n -> GL_n, and the equivariance verifications.

The GL bijection is pinned by the inner-product identity alone: a series
member is matched to the unique unipotent character tuple of the dual
centralizer whose multiplicity vector (over all torus types, with the
global sign) coincides with its own.  Everything else is then verified,
not imposed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chartable import (
    table_of,
    ClassFunction,
    dual_character,
    restrict_between_groups,
    twist_by_automorphism,
)
from .cyclotomic import CyclotomicNumber
from .dl import (
    DLContext,
    SemisimpleClassLabel,
    SYM_CHARS,
    dl_character,
    epsilon_group,
    label_stabilizer_order,
    lusztig_series,
    partitions_of,
    restrict_series,
)
from .finitefield import multiplicative_embedding
from .groups import (
    GroupRealization,
    GroupAutomorphism,
    adjoint_action_representatives,
    cached_group,
    duality_involution,
)
from .rootdatum import FrobeniusDatum, center_component_group, h1_frobenius, named_datum


# ---------------------------------------------------------------------------
# dual centralizers and their unipotent data
# ---------------------------------------------------------------------------


@dataclass
class DualCentralizerData:
    label: SemisimpleClassLabel
    factors: list  # [(orbit_key, multiplicity)] -> GL_m(q^d) factors
    epsilon_product: int  # eps_G * eps_H
    realized_specs: list  # group spec strings of the factors
    component_order: int  # |H^F / H0^F| (1 on the GL side)


def dual_centralizer(ctx: DLContext, label: SemisimpleClassLabel, sl_side: bool = False):
    """C_{G*}(s) = prod over eigenvalue orbits of GL_{m_j}(q^{d_j})."""
    factors = list(label.orbits)
    rank_sum = sum(m for _k, m in factors)
    eps_h = (-1) ** rank_sum
    eps_g = epsilon_group("GL", ctx.n) if not sl_side else epsilon_group("SL", ctx.n)
    if sl_side:
        eps_h = -eps_h  # the central torus F_q^x is quotiented out
    specs = [f"GL{m}({ctx.q ** key[0]})" for key, m in factors]
    for spec in specs:
        cached_group(spec)  # realize (tiny groups; raises if over budget)
    component = label_stabilizer_order(ctx, label) if sl_side else 1
    return DualCentralizerData(
        label=label,
        factors=factors,
        epsilon_product=eps_g * eps_h,
        realized_specs=specs,
        component_order=component,
    )


def unipotent_tuples(label: SemisimpleClassLabel):
    """Uch of the dual centralizer: one partition per eigenvalue orbit."""
    out = [[]]
    for _key, m in label.orbits:
        out = [prefix + [lam] for prefix in out for lam in partitions_of(m)]
    return [tuple(x) for x in out]


def uch_multiplicity(label, pi_tuple, lam_tuple) -> int:
    """<R_{T_pi}^H(1), rho_lam> = prod of symmetric group character values."""
    out = 1
    for (_key, pi), lam, (_k2, m) in zip(pi_tuple, lam_tuple, label.orbits):
        out *= SYM_CHARS[m][lam][pi]
    return out


def frobenius_eigenvalue(lam_tuple, scope: str = "GL-products") -> CyclotomicNumber:
    """Frobenius eigenvalue of a unipotent character of a GL product.

    Every unipotent character of GL_m(q^d) is principal series, so the
    eigenvalue is 1 throughout this scope; other factor types are refused.
    """
    if scope != "GL-products":
        raise ValueError(f"unsupported centralizer factor scope {scope!r}")
    return CyclotomicNumber.one()


# ---------------------------------------------------------------------------
# the GL Jordan bijection
# ---------------------------------------------------------------------------


@dataclass
class JordanWitness:
    member: int  # irreducible index in the parent table
    unipotent: tuple  # partition tuple aligned with label.orbits
    sign: int
    multiplicities: tuple  # <R_{T*}(s), rho> over the torus types
    predicted: tuple  # sign * <R^H(1), u> over the same torus types


@dataclass
class JordanData:
    label: SemisimpleClassLabel
    centralizer: DualCentralizerData
    witnesses: dict  # member index -> JordanWitness

    def unipotent_of(self, member: int) -> tuple:
        return self.witnesses[member].unipotent


def jordan_bijection(ctx: DLContext, label: SemisimpleClassLabel) -> JordanData:
    """The unique multiplicity-vector matching E(G, s) -> Uch(C(s))."""
    series = next(s for s in lusztig_series(ctx) if s.label == label)
    cent = dual_centralizer(ctx, label)
    sign = cent.epsilon_product
    tuples = unipotent_tuples(label)
    predicted = {
        lam: tuple(
            sign * uch_multiplicity(label, td.pi_tuple, lam) for td in series.torus_data
        )
        for lam in tuples
    }
    witnesses = {}
    used = set()
    for member in series.members:
        vec = tuple(td.decomposition[member] for td in series.torus_data)
        matches = [lam for lam, pred in predicted.items() if pred == vec]
        if len(matches) != 1:
            raise RuntimeError(
                f"multiplicity matching failed for member {member} of {label}: "
                f"vector {vec}, matches {matches}"
            )
        lam = matches[0]
        if lam in used:
            raise RuntimeError(f"matching is not injective at {lam}")
        used.add(lam)
        witnesses[member] = JordanWitness(
            member=member,
            unipotent=lam,
            sign=sign,
            multiplicities=vec,
            predicted=predicted[lam],
        )
    if len(used) != len(tuples):
        raise RuntimeError(f"matching is not surjective for {label}")
    return JordanData(label=label, centralizer=cent, witnesses=witnesses)


def all_jordan_data(ctx: DLContext) -> dict:
    cached = getattr(ctx, "_jordan", None)
    if cached is None:
        cached = {s.label: jordan_bijection(ctx, s.label) for s in lusztig_series(ctx)}
        ctx._jordan = cached
    return cached


# ---------------------------------------------------------------------------
# central characters and the tensoring identity
# ---------------------------------------------------------------------------


def central_linear_character(ctx: DLContext, z_exp: int) -> ClassFunction:
    """The linear character zhat = (character matched to z) o det on GL_n(q)."""
    from .groups import _bdet

    g = ctx.group
    data = g.conjugacy()
    dets = _bdet(g.tables, g.elements[data.reps])
    fld = g.field
    values = []
    for dcode in dets:
        el = fld.element(int(dcode))
        values.append(multiplicative_embedding(el, ctx.e) ** z_exp if ctx.q > 2 else CyclotomicNumber.one())
    return ClassFunction(g, values)


def _orbit_transport(ctx, label_from, label_to, mapping_key):
    """Position permutation sending orbit j of label_from to its image in
    label_to under an orbit-key map."""
    perm = []
    targets = list(label_to.orbits)
    for key, m in label_from.orbits:
        img = mapping_key(key)
        pos = targets.index((img, m))
        perm.append(pos)
    if sorted(perm) != list(range(len(perm))):
        raise RuntimeError("orbit transport is not a bijection")
    return perm


def transport_tuple(ctx, label_from, label_to, lam_tuple, mapping_key):
    """Carry a unipotent tuple along an orbit relabelling of the centralizer."""
    perm = _orbit_transport(ctx, label_from, label_to, mapping_key)
    out = [None] * len(lam_tuple)
    for j, lam in enumerate(lam_tuple):
        out[perm[j]] = lam
    return tuple(out)


def verify_tensor_identity(ctx: DLContext, label, z_exp: int) -> list[dict]:
    """J_{sz}(rho tensor zhat) = J_s(rho), transported along orbit scaling."""
    jd = all_jordan_data(ctx)
    data = jd[label]
    zhat = central_linear_character(ctx, z_exp)
    scaled = label.scaled(ctx.tower, z_exp)
    target = jd[scaled]
    rows = []
    irr = ctx.table.irreducibles
    for member, wit in data.witnesses.items():
        tensored = irr[member] * zhat
        match = ctx.table.index_of(tensored)
        expected = transport_tuple(
            ctx, label, scaled, wit.unipotent, lambda k: ctx.tower.scale_key(k, z_exp)
        )
        ok = target.witnesses[match].unipotent == expected
        rows.append(
            {
                "member": member,
                "tensored_member": match,
                "ok": bool(ok),
                "detail": f"{wit.unipotent} -> {target.witnesses[match].unipotent}",
            }
        )
    return rows


# ---------------------------------------------------------------------------
# equivariance checks (connected center: GL_n)
# ---------------------------------------------------------------------------


def _dual_index(ctx: DLContext, i: int) -> int:
    return ctx.table.index_of(dual_character(ctx.table.irreducibles[i]))


def verify_dual_equivariance(ctx: DLContext, label) -> list[dict]:
    """J_{s^-1}(rho^vee) = J_s(rho)^vee for every member of E(G, s).

    Unipotent characters of GL products are self-dual, so the right side is
    the transport of J_s(rho) along orbit inversion.
    """
    jd = all_jordan_data(ctx)
    data = jd[label]
    inv_label = label.inverse(ctx.tower)
    target = jd[inv_label]
    rows = []
    for member, wit in data.witnesses.items():
        dual_member = _dual_index(ctx, member)
        got = target.witnesses[dual_member].unipotent
        expected = transport_tuple(
            ctx, label, inv_label, wit.unipotent, ctx.tower.invert_key
        )
        rows.append(
            {
                "member": member,
                "dual_member": dual_member,
                "ok": bool(got == expected),
                "detail": f"J(rho^vee)={got}, J(rho)^vee={expected}",
            }
        )
    return rows


def verify_automorphism_equivariance(
    ctx: DLContext,
    label,
    sigma: GroupAutomorphism,
    label_action: str,
) -> list[dict]:
    """J_{sigma*^-1(s)}(rho o sigma^-1) = J_s(rho) o sigma*^-1.

    `label_action` describes the dual automorphism on semisimple classes:
    "identity" (inner automorphisms) or "inverse" (the duality involution
    and the pinned Chevalley involution, which act on classes by s -> s^-1).
    """
    jd = all_jordan_data(ctx)
    data = jd[label]
    if label_action == "identity":
        target_label, key_map = label, lambda k: k
    elif label_action == "inverse":
        target_label, key_map = label.inverse(ctx.tower), ctx.tower.invert_key
    else:
        raise ValueError(f"unknown label action {label_action!r}")
    target = jd[target_label]
    irr = ctx.table.irreducibles
    rows = []
    for member, wit in data.witnesses.items():
        twisted = twist_by_automorphism(irr[member], sigma)
        match = ctx.table.index_of(twisted)
        got = target.witnesses[match].unipotent
        expected = transport_tuple(ctx, label, target_label, wit.unipotent, key_map)
        rows.append(
            {
                "member": member,
                "twisted_member": match,
                "ok": bool(got == expected),
                "detail": f"J(rho o sigma)={got}, expected {expected}",
            }
        )
    return rows


# ---------------------------------------------------------------------------
# disconnected center: SL_n via the regular embedding
# ---------------------------------------------------------------------------


@dataclass
class DisconnectedJordanMap:
    bar_label: SemisimpleClassLabel
    lift: SemisimpleClassLabel
    gamma_order: int  # |H^F*/H0^F*|
    fibers: dict  # frozenset(orbit of unipotent tuples) -> sorted member tuple
    member_to_orbit: dict  # SL member -> frozenset of unipotent tuples
    rows: list  # verification rows for the three properties


def _scaling_stabilizer(ctx: DLContext, label) -> list[int]:
    return [z for z in range(ctx.q - 1) if label.scaled(ctx.tower, z) == label]


def _gamma_orbit(ctx: DLContext, label, lam_tuple) -> frozenset:
    """Orbit of a unipotent tuple under the component group action."""
    out = set()
    for z in _scaling_stabilizer(ctx, label):
        out.add(
            transport_tuple(ctx, label, label, lam_tuple, lambda k: ctx.tower.scale_key(k, z))
        )
    return frozenset(out)


def disconnected_jordan(
    ctx: DLContext, sl_group: GroupRealization
) -> dict:
    """The surjection J_s for every series of SL_n(q), with the fiber-orbit
    property, the fiber-size property, and the multiplicity sum identity all
    verified as postconditions."""
    cache = getattr(ctx, "_disconnected", None)
    if cache is not None and cache[0] is sl_group:
        return cache[1]
    gl_jordan = all_jordan_data(ctx)
    series_list = restrict_series(ctx, sl_group)
    sl_table = table_of(sl_group)
    adjoint = adjoint_action_representatives(sl_group)
    out = {}
    for s in series_list:
        lift = s.gl_lifts[0]
        stab = _scaling_stabilizer(ctx, lift)
        gamma_order = len(stab)
        gl_data = gl_jordan[lift]
        # arrow: SL member -> GL characters above it within E(GL, lift)
        above: dict[int, list[int]] = {m: [] for m in s.members}
        for gl_member, sl_support in s.restriction_map.items():
            for m in sl_support:
                above[m].append(gl_member)
        member_orbit = {}
        for m in s.members:
            if not above[m]:
                raise RuntimeError(f"no GL character above SL member {m}")
            tuples = {gl_data.unipotent_of(gl) for gl in above[m]}
            orbits = {_gamma_orbit(ctx, lift, t) for t in tuples}
            if len(orbits) != 1:
                raise RuntimeError(
                    f"GL characters above member {m} hit several unipotent orbits"
                )
            member_orbit[m] = next(iter(orbits))
        # fibers of the surjection
        fibers: dict[frozenset, list[int]] = {}
        for m, orb in member_orbit.items():
            fibers.setdefault(orb, []).append(m)
        rows = []
        # property: fibers are exactly the adjoint-action orbits
        adjoint_orbits = _adjoint_orbits(sl_table, s.members, adjoint)
        fiber_sets = {tuple(sorted(v)) for v in fibers.values()}
        ok_fibers = fiber_sets == adjoint_orbits
        rows.append(
            {
                "check": "fibers-are-adjoint-orbits",
                "ok": bool(ok_fibers),
                "detail": f"fibers {sorted(fiber_sets)}, orbits {sorted(adjoint_orbits)}",
            }
        )
        # property: fiber over O has exactly |Gamma_u| elements
        all_orbits = {_gamma_orbit(ctx, lift, t) for t in unipotent_tuples(lift)}
        surjective = set(fibers) == all_orbits
        rows.append(
            {
                "check": "surjective-onto-unipotent-orbits",
                "ok": bool(surjective),
                "detail": f"{len(fibers)} fibers, {len(all_orbits)} orbits",
            }
        )
        for orb, members in fibers.items():
            rep = next(iter(orb))
            stab_size = sum(
                1
                for z in stab
                if transport_tuple(
                    ctx, lift, lift, rep, lambda k: ctx.tower.scale_key(k, z)
                )
                == rep
            )
            rows.append(
                {
                    "check": "fiber-size-is-stabilizer-order",
                    "ok": bool(len(members) == stab_size),
                    "detail": f"orbit {sorted(orb)}: fiber {len(members)}, "
                    f"stabilizer {stab_size}",
                }
            )
        # property: the multiplicity sum identity over every torus type
        rows.extend(_verify_sum_identity(ctx, sl_group, sl_table, s, lift, fibers))
        out[s.label] = DisconnectedJordanMap(
            bar_label=s.label,
            lift=lift,
            gamma_order=gamma_order,
            fibers={orb: tuple(sorted(v)) for orb, v in fibers.items()},
            member_to_orbit=member_orbit,
            rows=rows,
        )
    ctx._disconnected = (sl_group, out)
    return out


def _adjoint_orbits(sl_table, members, adjoint_reps) -> set:
    irr = sl_table.irreducibles
    orbits = set()
    seen = set()
    for m in members:
        if m in seen:
            continue
        orbit = set()
        for auto in adjoint_reps:
            orbit.add(sl_table.index_of(twist_by_automorphism(irr[m], auto)))
        if not orbit <= set(members):
            raise RuntimeError("adjoint action leaves the series")
        orbits.add(tuple(sorted(orbit)))
        seen |= orbit
    return orbits


def _verify_sum_identity(ctx, sl_group, sl_table, s, lift, fibers) -> list[dict]:
    """<R_{T*}^{SL}(s), rho> = eps_SL eps_H0 sum over the orbit of
    <R^{H}(1), rho'> for every torus type and every member."""
    rows = []
    gl_series = next(x for x in lusztig_series(ctx) if x.label == lift)
    sign = epsilon_group("SL", ctx.n) * (-1) ** (sum(m for _k, m in lift.orbits) - 1)
    for td in gl_series.torus_data:
        r_gl = dl_character(ctx, td.parts, td.exps)
        res = restrict_between_groups(r_gl.class_function, sl_group)
        coeffs = sl_table.decompose_integers(res)
        for orb, members in fibers.items():
            predicted = sign * sum(
                uch_multiplicity(lift, td.pi_tuple, lam) for lam in orb
            )
            for m in members:
                rows.append(
                    {
                        "check": "restricted-multiplicity-sum",
                        "ok": bool(coeffs[m] == predicted),
                        "detail": f"member {m}, torus {td.parts}: "
                        f"{coeffs[m]} vs {predicted}",
                    }
                )
    return rows


# ---------------------------------------------------------------------------
# the main biconditional
# ---------------------------------------------------------------------------


def two_h1_predicate(spec) -> bool:
    datum = named_datum(f"{spec.family}{spec.n}")
    center = center_component_group(datum, FrobeniusDatum(spec.q))
    return h1_frobenius(center)[1]


def verify_dualizing(group: GroupRealization) -> list[dict]:
    """rho o iota = rho^vee for every irreducible character."""
    table = table_of(group)
    iota = duality_involution(group)
    rows = []
    for i, chi in enumerate(table.irreducibles):
        twisted = twist_by_automorphism(chi, iota)
        dual = dual_character(chi)
        rows.append(
            {
                "member": i,
                "degree": table.degrees[i],
                "ok": bool(twisted == dual),
                "detail": "rho o iota == rho^vee",
            }
        )
    return rows


def verify_duality_biconditional(group: GroupRealization, ctx: DLContext | None = None) -> list[dict]:
    """Both sides of: rho o iota = rho^vee iff the Frobenius eigenvalue of
    u_rho lies in {+-1}; requires the squared-coinvariants predicate."""
    if not two_h1_predicate(group.spec):
        raise ValueError(
            f"{group.spec}: the duality involution is not pinning-independent "
            "(an order > 2 class survives in the Frobenius coinvariants of the "
            "center component group), so the biconditional is out of scope"
        )
    rows = verify_dualizing(group)
    if group.spec.family == "GL":
        ctx = ctx or _context_for(group)
        jd = all_jordan_data(ctx)
        eigen_by_member = {}
        for data in jd.values():
            for m, wit in data.witnesses.items():
                eigen_by_member[m] = frobenius_eigenvalue(wit.unipotent)
    else:
        gl_ctx = ctx or dl_context_for_sl(group)
        dj = disconnected_jordan(gl_ctx, group)
        eigen_by_member = {}
        for dmap in dj.values():
            for m, orb in dmap.member_to_orbit.items():
                eigen_by_member[m] = frobenius_eigenvalue(next(iter(orb)))
    for row in rows:
        omega = eigen_by_member[row["member"]]
        rhs = omega == 1 or omega == -1
        row["eigenvalue_pm1"] = bool(rhs)
        row["ok"] = bool(row["ok"] == rhs and rhs)
        row["detail"] = "rho o iota == rho^vee iff omega(u_rho) in {1,-1}"
    return rows


def _context_for(group: GroupRealization) -> DLContext:
    from .dl import dl_context

    return dl_context(str(group.spec))


def dl_context_for_sl(sl_group: GroupRealization) -> DLContext:
    from .dl import dl_context

    return dl_context(f"GL{sl_group.n}({sl_group.q})")


def verify_hc_rigidity(sl_group: GroupRealization) -> list[dict]:
    """Within one series of SL_n(q): if rho o iota = rho^vee o ad(g) for an
    adjoint representative g, then already rho o iota = rho^vee."""
    table = table_of(sl_group)
    iota = duality_involution(sl_group)
    reps = adjoint_action_representatives(sl_group)
    irr = table.irreducibles
    rows = []
    for i, chi in enumerate(irr):
        twisted = twist_by_automorphism(chi, iota)
        dual = dual_character(chi)
        for g_auto in reps:
            moved = twist_by_automorphism(dual, g_auto)
            if twisted == moved:
                rows.append(
                    {
                        "member": i,
                        "rep": g_auto.name,
                        "ok": bool(twisted == dual),
                        "detail": "ad-twisted match implies exact match",
                    }
                )
    return rows


def verify_dual_equivariance_sl(ctx: DLContext, sl_group: GroupRealization) -> list[dict]:
    """Orbit-level dual equivariance for the disconnected surjection:
    the fiber orbit of rho^vee at the inverse label is the inversion
    transport of the fiber orbit of rho."""
    dj = disconnected_jordan(ctx, sl_group)
    sl_table = table_of(sl_group)
    tower = ctx.tower
    from .dl import pgl_label

    rows = []
    for bar_label, dmap in dj.items():
        inv_bar = pgl_label(ctx, bar_label.inverse(tower))
        target = dj[inv_bar]
        # carry unipotent tuples from orbits of dmap.lift to orbits of
        # target.lift: invert, then scale onto the chosen lift
        inv_lift = dmap.lift.inverse(tower)
        z_shift = next(
            z for z in range(ctx.q - 1) if inv_lift.scaled(tower, z) == target.lift
        )

        def carry(lam_tuple):
            t = transport_tuple(ctx, dmap.lift, inv_lift, lam_tuple, tower.invert_key)
            return transport_tuple(
                ctx, inv_lift, target.lift, t, lambda k: tower.scale_key(k, z_shift)
            )

        for m, orb in dmap.member_to_orbit.items():
            dual_m = sl_table.index_of(dual_character(sl_table.irreducibles[m]))
            expected = frozenset(carry(t) for t in orb)
            got = target.member_to_orbit[dual_m]
            rows.append(
                {
                    "member": m,
                    "dual_member": dual_m,
                    "ok": bool(got == expected),
                    "detail": f"orbit {sorted(got)} vs transported {sorted(expected)}",
                }
            )
    return rows
