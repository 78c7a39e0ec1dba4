"""Exact character tables via the class-matrix method over F_ell.

The table algorithm splits common eigenspaces of class matrices modulo a
prime ell = 1 (mod e) with ell > 2|G| (e the group exponent), then lifts
eigenvalue data to exact cyclotomic numbers through discrete Fourier sums
of root-of-unity multiplicities.  Everything downstream of the lift is
exact integer/cyclotomic arithmetic; the modulus enters only through the
lifting bound, which the choice of ell makes unambiguous.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .cyclotomic import CyclotomicNumber, _ring, root_of_unity_sum
from .groups import GroupAutomorphism, GroupRealization, _bmm

_INT64_GUARD = 1 << 62


def _exact_matmul(a: np.ndarray, b: np.ndarray, inner: int) -> np.ndarray:
    """Integer matmul that never overflows: falls back to python ints."""
    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * max(inner, 1)
    if bound < _INT64_GUARD and a.dtype != object and b.dtype != object:
        return a @ b
    return a.astype(object) @ b.astype(object)


class _PackedContext:
    """Per-group data for vectorized exact cyclotomic inner products."""

    def __init__(self, group: GroupRealization):
        data = group.conjugacy()
        self.e = data.exponent
        ring = _ring(self.e)
        self.phi = ring.phi
        self.pow_np = np.array(ring.power_rows, dtype=np.int64)
        # conjugation zeta^i -> zeta^(e-i) as a matrix on coefficient vectors
        conj_rows = [ring.power_rows[(self.e - i) % self.e] for i in range(self.phi)]
        self.conj_np = np.array(conj_rows, dtype=np.int64)
        self.sizes = data.sizes.astype(np.int64)
        self.n_classes = data.n_classes


def _packed_context(group: GroupRealization) -> _PackedContext:
    ctx = getattr(group, "_packed_ctx", None)
    if ctx is None:
        ctx = _PackedContext(group)
        group._packed_ctx = ctx
    return ctx


class ClassFunction:
    """An exact class function: one cyclotomic value per conjugacy class."""

    def __init__(self, group: GroupRealization, values):
        data = group.conjugacy()
        if len(values) != data.n_classes:
            raise ValueError("one value per conjugacy class required")
        self.group = group
        self.values = [
            v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.from_rational(v)
            for v in values
        ]
        self._packed = None

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> CyclotomicNumber:
        cls = self.group.conjugacy().cls
        return self.values[int(cls[self.group.identity_idx])]

    def value_at_element(self, idx: int) -> CyclotomicNumber:
        return self.values[int(self.group.conjugacy().cls[idx])]

    def packed(self):
        """(matrix, denominator): values lifted to the exponent conductor."""
        if self._packed is None:
            ctx = _packed_context(self.group)
            lifted = [v.lift(ctx.e) for v in self.values]
            den = 1
            for v in lifted:
                den = den * v.den // gcd(den, v.den)
            mat = np.zeros((ctx.n_classes, ctx.phi), dtype=np.int64)
            big = max((max(abs(c) for c in v.num) if v.num else 0) for v in lifted)
            if big * den >= _INT64_GUARD:
                mat = mat.astype(object)
            for k, v in enumerate(lifted):
                scale = den // v.den
                for i, c in enumerate(v.num):
                    mat[k, i] = c * scale
            self._packed = (mat, den)
        return self._packed

    # -- pointwise algebra ---------------------------------------------------

    def _binary(self, other, op):
        if isinstance(other, ClassFunction):
            if other.group is not self.group:
                raise ValueError("class functions on different groups")
            return ClassFunction(
                self.group, [op(a, b) for a, b in zip(self.values, other.values)]
            )
        return ClassFunction(self.group, [op(a, other) for a in self.values])

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, scalar):
        return ClassFunction(self.group, [v * scalar for v in self.values])

    def __neg__(self):
        return ClassFunction(self.group, [-v for v in self.values])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassFunction)
            and other.group is self.group
            and all(a == b for a, b in zip(self.values, other.values))
        )

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def to_json(self) -> dict:
        return {"values": [v.to_json() for v in self.values]}

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.spec}, deg={self.degree})"


def trivial_character(group: GroupRealization) -> ClassFunction:
    return ClassFunction(group, [1] * group.conjugacy().n_classes)


def inner_product(f: ClassFunction, g: ClassFunction) -> CyclotomicNumber:
    """<f, g> = (1/|G|) sum over classes of size * f * conj(g), exactly."""
    if f.group is not g.group:
        raise ValueError("class functions on different groups")
    ctx = _packed_context(f.group)
    mf, df = f.packed()
    mg, dg = g.packed()
    mg_conj = _exact_matmul(mg, ctx.conj_np, ctx.phi)
    weighted = mg_conj * ctx.sizes[:, None]
    surface = _exact_matmul(mf.T, weighted, ctx.n_classes)  # (phi, phi)
    # collapse the product surface along antidiagonals: conv[t] = sum_{a+b=t}
    flipped = np.fliplr(surface)
    conv = np.array(
        [np.trace(flipped, offset=ctx.phi - 1 - t) for t in range(2 * ctx.phi - 1)],
        dtype=surface.dtype,
    )
    vec = _exact_matmul(conv[None, :], ctx.pow_np[: 2 * ctx.phi - 1], 2 * ctx.phi - 1)[0]
    den = df * dg * f.group.order
    return CyclotomicNumber(ctx.e, [int(x) for x in vec], den)


def norm_squared(f: ClassFunction) -> Fraction:
    return inner_product(f, f).as_rational()


def dual_character(f: ClassFunction) -> ClassFunction:
    """chi^vee: value at the class of g is the value at the class of g^-1."""
    inv = f.group.conjugacy().inverse_class
    return ClassFunction(f.group, [f.values[int(inv[k])] for k in range(len(f.values))])


def twist_by_automorphism(f: ClassFunction, sigma: GroupAutomorphism) -> ClassFunction:
    """f o sigma^(-1), realized through sigma's class permutation."""
    if sigma.group is not f.group:
        raise ValueError("automorphism of a different group")
    cp_inv = sigma.inverse().class_permutation()
    return ClassFunction(f.group, [f.values[int(cp_inv[k])] for k in range(len(f.values))])


def induce_from_subgroup(
    group: GroupRealization, member_indices, value_at_index
) -> ClassFunction:
    """Induction of a subgroup class function given by values on elements.

    `member_indices` lists the subgroup's element indices inside `group`;
    `value_at_index` maps an element index to its CyclotomicNumber value.
    """
    data = group.conjugacy()
    sub_order = len(member_indices)
    sums = [CyclotomicNumber.zero() for _ in range(data.n_classes)]
    for idx in member_indices:
        c = int(data.cls[idx])
        sums[c] = sums[c] + value_at_index(int(idx))
    scale = Fraction(group.order, sub_order)
    out = []
    for k in range(data.n_classes):
        out.append(sums[k] * (scale / int(data.sizes[k])))
    return ClassFunction(group, out)


def restrict_between_groups(
    f: ClassFunction, subgroup: GroupRealization
) -> ClassFunction:
    """Restriction along an inclusion of realized matrix groups (same field)."""
    big = f.group
    fusion = class_fusion(subgroup, big)
    return ClassFunction(subgroup, [f.values[int(fusion[k])] for k in range(len(fusion))])


def class_fusion(small: GroupRealization, big: GroupRealization) -> np.ndarray:
    """Map each class of `small` to the class of `big` containing it."""
    if small.q != big.q or small.n != big.n:
        raise ValueError("groups are not compatible for fusion")
    reps = small.conjugacy().reps
    mats = small.elements[reps]
    return big.conjugacy().cls[big.lookup(mats)]


def twisted_fs_indicator(f: ClassFunction, iota: GroupAutomorphism) -> CyclotomicNumber:
    """(1/|G|) sum over g of f(g * iota(g)): the twisted Frobenius-Schur sign.

    Zero iff f o iota is not the dual of f; otherwise +-1 for irreducible f.
    """
    if not iota.is_involution():
        raise ValueError("twisted indicator needs an involutive automorphism")
    g = f.group
    data = g.conjugacy()
    prods = _bmm(g.tables, g.elements, g.elements[iota.perm])
    classes = data.cls[g.lookup(prods)]
    counts = np.bincount(classes, minlength=data.n_classes)
    total = CyclotomicNumber.zero()
    for k, c in enumerate(counts):
        if c:
            total = total + f.values[k] * int(c)
    return total * Fraction(1, g.order)


# ---------------------------------------------------------------------------
# modular arithmetic helpers for the table algorithm
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class NoTablePrime(Exception):
    pass


def find_table_prime(exponent: int, order: int, bound: int = 10**9) -> int:
    """Smallest prime ell = 1 (mod exponent) with ell > 2 |G|, below `bound`."""
    k = max(1, (2 * order) // exponent)
    while True:
        ell = exponent * k + 1
        if ell > bound:
            raise NoTablePrime(
                f"no prime = 1 mod {exponent} above {2 * order} was found "
                f"below the bound {bound}"
            )
        if ell > 2 * order and _is_prime(ell):
            return ell
        k += 1


def _primitive_root_of_unity(ell: int, e: int) -> int:
    """A fixed element of order e in F_ell^x (smallest generator's power)."""
    factors = _prime_factors(ell - 1)
    g = 2
    while True:
        if all(pow(g, (ell - 1) // p, ell) != 1 for p in factors):
            break
        g += 1
    return pow(g, (ell - 1) // e, ell)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ModularContext:
    """The mod-ell shadow of a character table (used for fast searches)."""

    def __init__(self, group: GroupRealization, ell: int, zeta_mod: int):
        self.group = group
        self.ell = ell
        self.zeta_mod = zeta_mod  # fixed primitive e-th root of unity mod ell
        self.e = group.conjugacy().exponent

    def reduce_value(self, v: CyclotomicNumber) -> int:
        x = v.lift(self.e)
        acc = 0
        zi = 1
        for c in x.num:
            acc = (acc + c * zi) % self.ell
            zi = zi * self.zeta_mod % self.ell
        return acc * pow(x.den, -1, self.ell) % self.ell

    def reduce_class_function(self, f: ClassFunction) -> np.ndarray:
        return np.array([self.reduce_value(v) for v in f.values], dtype=np.int64)


# ---------------------------------------------------------------------------
# the table algorithm
# ---------------------------------------------------------------------------


class CharacterTable:
    def __init__(self, group: GroupRealization, irreducibles, modular: ModularContext):
        self.group = group
        self.irreducibles: list[ClassFunction] = irreducibles
        self.exponent = group.conjugacy().exponent
        self.modular = modular
        self.degrees = [chi.degree.as_int() for chi in irreducibles]

    def __len__(self) -> int:
        return len(self.irreducibles)

    def index_of(self, f: ClassFunction) -> int:
        """Index of an irreducible equal to f (hash on packed values)."""
        index = getattr(self, "_row_index", None)
        if index is None:
            index = {}
            for i, chi in enumerate(self.irreducibles):
                mat, den = chi.packed()
                index[(den, np.asarray(mat, dtype=np.int64).tobytes())] = i
            self._row_index = index
        mat, den = f.packed()
        key = (den, np.asarray(mat, dtype=np.int64).tobytes())
        if key not in index:
            raise KeyError("class function is not an irreducible of this table")
        return index[key]

    def verify_degree_sum(self) -> None:
        if sum(d * d for d in self.degrees) != self.group.order:
            raise AssertionError("sum of squared degrees differs from |G|")

    def verify_orthogonality(self) -> None:
        """Exact row and column orthogonality for the whole table."""
        r = len(self.irreducibles)
        for i in range(r):
            for j in range(i, r):
                val = inner_product(self.irreducibles[i], self.irreducibles[j])
                if val != (1 if i == j else 0):
                    raise AssertionError(f"row orthogonality fails at ({i}, {j})")
        # column orthogonality follows from row orthogonality for a complete
        # table, but check it directly as well
        data = self.group.conjugacy()
        for k in range(data.n_classes):
            for m in range(k, data.n_classes):
                acc = CyclotomicNumber.zero()
                for chi in self.irreducibles:
                    acc = acc + chi.values[k] * chi.values[m].conjugate()
                expected = (
                    Fraction(self.group.order, int(data.sizes[k])) if k == m else Fraction(0)
                )
                if acc != CyclotomicNumber.from_rational(expected):
                    raise AssertionError(f"column orthogonality fails at ({k}, {m})")

    def verify_modular_orthogonality(self) -> None:
        """Orthogonality of the mod-ell shadow (fast sanity for big tables)."""
        ell = self.modular.ell
        mat = np.array(
            [self.modular.reduce_class_function(chi) for chi in self.irreducibles],
            dtype=np.int64,
        )
        data = self.group.conjugacy()
        inv = data.inverse_class
        conj = mat[:, inv]
        weighted = conj * (data.sizes % ell)
        gram = (mat @ weighted.T) % ell
        expected = (self.group.order % ell) * np.eye(len(self.irreducibles), dtype=np.int64)
        if not np.array_equal(gram % ell, expected % ell):
            raise AssertionError("modular orthogonality failed")

    def decompose(self, f: ClassFunction) -> list[CyclotomicNumber]:
        return [inner_product(f, chi) for chi in self.irreducibles]

    def decompose_integers(self, f: ClassFunction) -> list[int]:
        """Multiplicities of f over Irr, found mod ell and verified exactly.

        The candidate vector is computed by modular inner products, then the
        identity f = sum(a_i chi_i) is checked with exact integer arithmetic;
        together with linear independence of irreducible characters this
        proves the a_i are exactly the multiplicities.
        """
        mod = self.modular
        ell = mod.ell
        fv = mod.reduce_class_function(f)
        data = self.group.conjugacy()
        inv_order = pow(self.group.order % ell, -1, ell)
        cached = getattr(self, "_irr_mod_conj", None)
        if cached is None:
            rows = np.array(
                [mod.reduce_class_function(chi) for chi in self.irreducibles],
                dtype=np.int64,
            )
            cached = rows[:, data.inverse_class]
            self._irr_mod_conj = cached
        out = []
        for cv in cached:
            a = int((fv * cv % ell * (data.sizes % ell)).sum() % ell * inv_order % ell)
            if a > ell // 2:
                a -= ell
            out.append(a)
        self._verify_integer_combination(f, out)
        return out

    def _verify_integer_combination(self, f: ClassFunction, coeffs: list[int]) -> None:
        ctx = _packed_context(self.group)
        mf, df = f.packed()
        if df != 1:
            raise AssertionError("virtual characters must have integral values")
        acc = np.zeros_like(mf)
        for a, chi in zip(coeffs, self.irreducibles):
            if a:
                mc, dc = chi.packed()
                assert dc == 1
                acc = acc + a * mc
        if not np.array_equal(acc, mf):
            raise AssertionError("modular decomposition failed exact verification")

    def to_json(self) -> dict:
        data = self.group.conjugacy()
        return {
            "group": str(self.group.spec),
            "exponent": self.exponent,
            "ell": self.modular.ell,
            "zeta_mod": self.modular.zeta_mod,
            "class_sizes": [int(s) for s in data.sizes],
            "class_orders": list(data.orders),
            "degrees": self.degrees,
            "rows": [chi.to_json() for chi in self.irreducibles],
        }

    @staticmethod
    def from_json(group: GroupRealization, data: dict) -> "CharacterTable":
        """Rebuild a table from its serialized form and re-verify it."""
        if data["group"] != str(group.spec):
            raise ValueError("table serialized for a different group")
        conj = group.conjugacy()
        if data["exponent"] != conj.exponent or data["class_sizes"] != [
            int(s) for s in conj.sizes
        ]:
            raise ValueError("serialized table does not match the class data")
        irreducibles = [
            ClassFunction(group, [CyclotomicNumber.from_json(v) for v in row["values"]])
            for row in data["rows"]
        ]
        modular = ModularContext(group, data["ell"], data["zeta_mod"])
        table = CharacterTable(group, irreducibles, modular)
        if table.degrees != data["degrees"]:
            raise ValueError("serialized degrees disagree with the values")
        table.verify_degree_sum()
        table.verify_modular_orthogonality()
        return table


def table_of(group: GroupRealization) -> CharacterTable:
    """The group's character table, computed once and cached on the group."""
    table = getattr(group, "_table", None)
    if table is None:
        table = character_table(group)
        group._table = table
    return table


def character_table(group: GroupRealization) -> CharacterTable:
    data = group.conjugacy()
    r = data.n_classes
    e = data.exponent
    ell = find_table_prime(e, group.order)
    zeta_mod = _primitive_root_of_unity(ell, e)
    modular = ModularContext(group, ell, zeta_mod)
    if r == 1:
        table = CharacterTable(group, [trivial_character(group)], modular)
        table.verify_degree_sum()
        return table

    omegas = _central_characters_mod(group, ell)
    chi_mod, degrees = _character_values_mod(group, omegas, ell)
    irreducibles = _lift_table(group, chi_mod, degrees, ell, zeta_mod)
    irreducibles.sort(key=_character_sort_key(group, e))
    table = CharacterTable(group, irreducibles, modular)
    table.verify_degree_sum()
    table.verify_modular_orthogonality()
    return table


def _character_sort_key(group: GroupRealization, e: int):
    def key(chi: ClassFunction):
        mat, den = chi.packed()
        return (chi.degree.as_int(), [tuple(int(x) for x in row) for row in mat])

    return key


# -- modular linear algebra --------------------------------------------------


def _mod_rref(mat: np.ndarray, ell: int):
    """Row-reduce mod ell; returns (rref, pivot column list)."""
    m = mat % ell
    rows, cols = m.shape
    pivots = []
    rank = 0
    for c in range(cols):
        pivot = None
        for i in range(rank, rows):
            if m[i, c] % ell:
                pivot = i
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), -1, ell) % ell
        for i in range(rows):
            if i != rank and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[rank]) % ell
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return m, pivots


def _mod_solve(a: np.ndarray, b: np.ndarray, ell: int) -> np.ndarray:
    """Solve a @ x = b mod ell for square invertible a."""
    n = a.shape[0]
    aug = np.concatenate([a % ell, b % ell], axis=1).astype(np.int64)
    red, pivots = _mod_rref(aug, ell)
    if pivots[:n] != list(range(n)):
        raise ArithmeticError("singular system mod ell")
    return red[:n, n:]


def _mod_nullspace(a: np.ndarray, ell: int) -> np.ndarray:
    """Columns spanning the kernel of a mod ell."""
    rows, cols = a.shape
    red, pivots = _mod_rref(a.copy(), ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, fc]) % ell
    return basis


def _poly_mulmod(a, b, f, ell):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % ell
    # reduce modulo monic f
    df = len(f) - 1
    for k in range(len(out) - 1, df - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for i in range(df):
                out[k - df + i] = (out[k - df + i] - c * f[i]) % ell
    out = out[:df]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_gcd(a, b, ell):
    a = [x % ell for x in a]
    b = [x % ell for x in b]
    while any(b):
        a, b = b, _poly_mod_poly(a, b, ell)
    # normalize monic
    if any(a):
        inv = pow(a[-1], -1, ell)
        a = [x * inv % ell for x in a]
    return a


def _poly_mod_poly(a, b, ell):
    a = [x % ell for x in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    inv = pow(b[-1], -1, ell)
    while len(a) - 1 >= db and any(a):
        c = a[-1] * inv % ell
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - c * b[i]) % ell
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return a


def _char_poly_mod(a: np.ndarray, ell: int) -> list[int]:
    """Characteristic polynomial mod ell by Newton identity / trace powers."""
    n = a.shape[0]
    traces = []
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = power @ a % ell
        traces.append(int(power.trace()) % ell)
    # Newton: e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    es = [1]
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            term = es[k - i] * traces[i - 1] % ell
            acc = (acc + (term if i % 2 == 1 else -term)) % ell
        es.append(acc * pow(k, -1, ell) % ell)
    # char poly x^n - e1 x^(n-1) + e2 x^(n-2) - ...
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        coeffs[n - k] = (es[k] if k % 2 == 0 else -es[k]) % ell
    return coeffs


def _poly_roots_mod(f: list[int], ell: int) -> list[int]:
    """All roots in F_ell of a polynomial that splits completely."""
    # strip multiplicities: gcd with derivative
    fp = [(i * c) % ell for i, c in enumerate(f)][1:]
    g = _poly_gcd(f, fp, ell) if any(fp) else [1]
    if len(g) > 1:
        f = _poly_divide_mod(f, g, ell)
    roots: list[int] = []
    _split_linear(f, ell, roots)
    return sorted(roots)


def _poly_divide_mod(a, b, ell):
    a = [x % ell for x in a]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, ell)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv % ell
        out[k] = c
        if c:
            for i in range(len(b)):
                a[k + i] = (a[k + i] - c * b[i]) % ell
    return out


def _split_linear(f, ell, roots):
    """Cantor-Zassenhaus style splitting for a squarefree split polynomial."""
    deg = len(f) - 1
    if deg == 0:
        return
    if deg == 1:
        roots.append((-f[0]) * pow(f[1], -1, ell) % ell)
        return
    if f[0] == 0:
        roots.append(0)
        _split_linear(_poly_divide_mod(f, [0, 1], ell), ell, roots)
        return
    shift = 0
    while True:
        # gcd(f, (x + shift)^((ell-1)/2) - 1)
        base = [shift % ell, 1]
        power = _poly_powmod(base, (ell - 1) // 2, f, ell)
        power[0] = (power[0] - 1) % ell
        g = _poly_gcd(f, power, ell)
        if 0 < len(g) - 1 < deg:
            _split_linear(g, ell, roots)
            _split_linear(_poly_divide_mod(f, g, ell), ell, roots)
            return
        shift += 1


def _poly_powmod(base, exponent, f, ell):
    result = [1]
    b = [x % ell for x in base]
    while exponent:
        if exponent & 1:
            result = _poly_mulmod(result, b, f, ell)
        exponent >>= 1
        if exponent:
            b = _poly_mulmod(b, b, f, ell)
    return result


# -- Dixon-Schneider splitting ------------------------------------------------


def _class_matrix(group: GroupRealization, i: int) -> np.ndarray:
    """M_i[j, k] = #{(x, y) in C_i x C_j : x y = g_k}."""
    data = group.conjugacy()
    r = data.n_classes
    members = data.members(i)
    x_inv = group.elements[group.inv_perm[members]]
    reps_m = group.elements[data.reps]
    prods = _bmm(group.tables, x_inv[:, None, :, :], reps_m[None, :, :, :])
    classes = data.cls[group.lookup(prods)]  # (|C_i|, r): class of x^-1 g_k
    mat = np.zeros((r, r), dtype=np.int64)
    for k in range(r):
        mat[:, k] = np.bincount(classes[:, k], minlength=r)
    return mat


def _central_characters_mod(group: GroupRealization, ell: int) -> np.ndarray:
    """All central character vectors (omega(K_k))_k as rows, mod ell."""
    data = group.conjugacy()
    r = data.n_classes
    spaces = [np.eye(r, dtype=np.int64)]  # each: (r, dim) column basis
    class_order = sorted(range(r), key=lambda i: int(data.sizes[i]))
    for i in class_order:
        if all(s.shape[1] == 1 for s in spaces):
            break
        if int(data.sizes[i]) == 1 and i == int(data.cls[group.identity_idx]):
            continue
        m = _class_matrix(group, i) % ell
        new_spaces = []
        for v in spaces:
            if v.shape[1] == 1:
                new_spaces.append(v)
                continue
            mv = m @ v % ell
            # action matrix A with M V = V A: solve using independent rows
            pivot_rows = _independent_rows(v, ell)
            a = _mod_solve(v[pivot_rows], mv[pivot_rows], ell)
            for root in _poly_roots_mod(_char_poly_mod(a, ell), ell):
                shifted = (a - root * np.eye(a.shape[0], dtype=np.int64)) % ell
                kern = _mod_nullspace(shifted, ell)
                if kern.shape[1]:
                    new_spaces.append(v @ kern % ell)
        spaces = new_spaces
    if not all(s.shape[1] == 1 for s in spaces):
        raise RuntimeError("class matrices failed to split the eigenspaces")
    ident = int(group.conjugacy().cls[group.identity_idx])
    out = []
    for s in spaces:
        w = s[:, 0] % ell
        if w[ident] % ell == 0:
            raise RuntimeError("eigenvector with zero identity coordinate")
        w = w * pow(int(w[ident]), -1, ell) % ell
        out.append(w)
    return np.array(sorted(out, key=lambda v: v.tolist()), dtype=np.int64)


def _independent_rows(v: np.ndarray, ell: int) -> list[int]:
    _, pivots = _mod_rref(v.T.copy() % ell, ell)
    return pivots


def _character_values_mod(group: GroupRealization, omegas: np.ndarray, ell: int):
    """chi(g_k) mod ell and exact integer degrees from central characters."""
    data = group.conjugacy()
    r = data.n_classes
    sizes = data.sizes.astype(np.int64)
    inv = data.inverse_class
    chi_rows = []
    degrees = []
    order = group.order
    for w in omegas:
        s = 0
        for k in range(r):
            s = (s + w[k] * w[int(inv[k])] % ell * pow(int(sizes[k]), -1, ell)) % ell
        d_sq = order % ell * pow(int(s), -1, ell) % ell
        d = None
        for cand in range(1, isqrt(order) + 1):
            if cand * cand % ell == d_sq:
                d = cand
                break
        if d is None:
            raise RuntimeError("no integral degree matches the eigenvector")
        degrees.append(d)
        size_inv = np.array([pow(int(sizes[k]), -1, ell) for k in range(r)], dtype=np.int64)
        chi_rows.append(w * size_inv % ell * d % ell)
    return np.array(chi_rows, dtype=np.int64), degrees


def _lift_table(group, chi_mod, degrees, ell, zeta_mod):
    """Lift mod-ell character values to exact cyclotomics via DFT sums."""
    data = group.conjugacy()
    r = data.n_classes
    e = data.exponent
    power_classes = []
    for i in range(r):
        m = data.orders[i]
        pcs = [int(data.cls[group.identity_idx])]
        cur = int(data.reps[i])
        idx = cur
        for _ in range(m - 1):
            pcs.append(int(data.cls[idx]))
            idx = group.mul_idx(idx, cur)
        power_classes.append(pcs)
    irreducibles = []
    for row_idx in range(len(chi_mod)):
        values = []
        for i in range(r):
            m = data.orders[i]
            zm = pow(zeta_mod, e // m, ell)
            vals_t = chi_mod[row_idx][power_classes[i]]
            mults = {}
            m_inv = pow(m, -1, ell)
            for j in range(m):
                acc = 0
                for t in range(m):
                    acc = (acc + int(vals_t[t]) * pow(zm, (-j * t) % m, ell)) % ell
                c = acc * m_inv % ell
                if c:
                    if c > ell // 2:
                        raise RuntimeError("root-of-unity multiplicity fails to lift")
                    mults[j] = c
            values.append(root_of_unity_sum(m, mults))
        chi = ClassFunction(group, values)
        if chi.degree.as_int() != degrees[row_idx]:
            raise RuntimeError("lifted degree mismatch")
        irreducibles.append(chi)
    return irreducibles
