"""Finite fields F_{p^k} with deterministic defining polynomials.

The defining polynomial of F_{p^k} is the lexicographically smallest monic
irreducible of degree k over F_p whose root generates the multiplicative
group (ordering: the integer sum(a_i p^i) over the non-leading coefficients).
Elements are stored as integer codes in [0, p^k): the base-p digits of a code
are the coordinates in the polynomial basis 1, x, ..., x^(k-1).  The stored
multiplicative generator is always the class of x itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cyclotomic import CyclotomicNumber, zeta


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, d in enumerate(m):
            a[shift + i] = (a[shift + i] - c * d) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    k = len(f) - 1
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for code in range(p**deg):
            g = [0] * (deg + 1)
            c = code
            for i in range(deg):
                g[i] = c % p
                c //= p
            g[deg] = 1
            r = _poly_mod(list(f), g, p)
            if r == [0]:
                return False
    return True


class FiniteField:
    """The field F_{p^k} with code-level arithmetic and log/exp tables."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        self.p = p
        self.k = k
        self.q = p**k
        self.poly = self._find_polynomial()
        self._build_tables()

    def _find_polynomial(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        for code in range(p**k):
            coeffs = []
            c = code
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            f = coeffs + [1]
            if f[0] == 0:  # x divides f
                continue
            if not _is_irreducible(f, p):
                continue
            if self._root_is_primitive(f):
                return tuple(f)
        raise RuntimeError("no primitive polynomial found")  # unreachable

    def _root_is_primitive(self, f: list[int]) -> bool:
        p, k, q = self.p, self.k, self.q
        if k == 1:
            root = (-f[0]) % p
            if root == 0:
                return False
            x, order = root, 1
            while x != 1:
                x = x * root % p
                order += 1
            return order == p - 1
        # powers of x mod f must have period exactly q - 1
        cur = [0, 1]
        for i in range(1, q - 1):
            cur = _poly_mod([0] + cur, f, p)
            if cur == [1]:
                return i == q - 2
        return True

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        if k == 1:
            g = (-self.poly[0]) % p
            exp = [1]
            for _ in range(q - 2):
                exp.append(exp[-1] * g % p)
        else:
            cur = [1]
            exp_vecs = [cur]
            for _ in range(q - 2):
                cur = _poly_mod([0] + cur, list(self.poly), p)
                exp_vecs.append(cur)
            exp = [sum(c * p**i for i, c in enumerate(v)) for v in exp_vecs]
        self.exp = exp  # exp[i] = code of generator^i
        log = [-1] * q
        for i, c in enumerate(exp):
            log[c] = i
        self.log = log
        self.generator_code = exp[1 % (q - 1)] if q > 2 else 1

    # -- code-level arithmetic ------------------------------------------

    def add_codes(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_code(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, mult = 0, 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub_codes(self, a: int, b: int) -> int:
        return self.add_codes(a, self.neg_code(b))

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow_code(self, a: int, n: int) -> int:
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self.exp[self.log[a] * n % (self.q - 1)]

    def frobenius_code(self, a: int) -> int:
        return self.pow_code(a, self.p) if a else 0

    def dlog_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("discrete log of zero")
        return self.log[a]

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("order of zero")
        return (self.q - 1) // gcd(self.q - 1, self.log[a])

    # -- element API -----------------------------------------------------

    def element(self, code: int) -> "FiniteFieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for F_{self.q}")
        return FiniteFieldElement(self, code)

    def from_coords(self, coords) -> "FiniteFieldElement":
        if len(coords) != self.k:
            raise ValueError("wrong coordinate length")
        code = sum((c % self.p) * self.p**i for i, c in enumerate(coords))
        return self.element(code)

    def from_int(self, n: int) -> "FiniteFieldElement":
        """The image of the rational integer n (prime subfield element)."""
        return self.element(n % self.p)

    def zero(self) -> "FiniteFieldElement":
        return self.element(0)

    def one(self) -> "FiniteFieldElement":
        return self.element(1)

    def generator(self) -> "FiniteFieldElement":
        return self.element(self.generator_code)

    def elements(self):
        return [self.element(c) for c in range(self.q)]

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))


@lru_cache(maxsize=None)
def finite_field(p: int, k: int) -> FiniteField:
    return FiniteField(p, k)


@dataclass(frozen=True)
class FiniteFieldElement:
    """An element of F_{p^k}; the code's base-p digits are its coordinates."""

    field: FiniteField
    code: int

    @property
    def coords(self) -> tuple[int, ...]:
        c, out = self.code, []
        for _ in range(self.field.k):
            out.append(c % self.field.p)
            c //= self.field.p
        return tuple(out)

    def is_zero(self) -> bool:
        return self.code == 0

    def _check(self, other: "FiniteFieldElement") -> None:
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FiniteFieldElement(self.field, self.field.add_codes(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return FiniteFieldElement(self.field, self.field.sub_codes(self.code, other.code))

    def __neg__(self):
        return FiniteFieldElement(self.field, self.field.neg_code(self.code))

    def __mul__(self, other):
        self._check(other)
        return FiniteFieldElement(self.field, self.field.mul_codes(self.code, other.code))

    def inverse(self):
        return FiniteFieldElement(self.field, self.field.inv_code(self.code))

    def __pow__(self, n: int):
        return FiniteFieldElement(self.field, self.field.pow_code(self.code, n))

    def to_json(self) -> dict:
        return {"p": self.field.p, "k": self.field.k, "coords": list(self.coords)}

    def __repr__(self) -> str:
        return f"FF({self.field.p}^{self.field.k}:{self.code})"


def field_embedding(small: FiniteField, big: FiniteField):
    """The canonical embedding F_{p^j} -> F_{p^k} for j | k, on codes.

    The generator of the small field is sent to the root of its defining
    polynomial in the big field with the smallest discrete log; this fixes
    the embedding deterministically.  Returns a function on codes.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError("no embedding between these fields")
    if small.q == big.q:
        return lambda c: c
    root_code = None
    for i in range(big.q - 1):
        cand = big.exp[i]
        acc = 0
        for coeff in reversed(small.poly):
            acc = big.add_codes(big.mul_codes(acc, cand), coeff % big.p)
        if acc == 0:
            root_code = cand
            break
    if root_code is None:
        raise RuntimeError("defining polynomial has no root in the big field")
    t = big.log[root_code]

    def embed(code: int) -> int:
        if code == 0:
            return 0
        return big.exp[small.log[code] * t % (big.q - 1)]

    # the image of the small generator must have exact order small.q - 1
    assert big.order_of(embed(small.generator_code)) == small.q - 1
    return embed


@lru_cache(maxsize=None)
def embedding_maps(p: int, j: int, k: int):
    return field_embedding(finite_field(p, j), finite_field(p, k))


def discrete_log(x: FiniteFieldElement, base: FiniteFieldElement) -> int:
    """Least non-negative n with base^n = x; base must generate F_q^x."""
    if x.is_zero():
        raise ZeroDivisionError("discrete log of zero")
    fld = x.field
    if base.field != fld:
        raise ValueError("base from a different field")
    lb = fld.log[base.code]
    if fld.q > 2 and gcd(lb, fld.q - 1) != 1:
        raise ValueError("base does not generate the multiplicative group")
    if fld.q == 2:
        return 0
    return fld.log[x.code] * pow(lb, -1, fld.q - 1) % (fld.q - 1)


def multiplicative_embedding(x: FiniteFieldElement, target_conductor: int) -> CyclotomicNumber:
    """The homomorphism F_q^x -> <zeta> sending the stored generator to zeta_{q-1}.

    The target conductor must be a multiple of q - 1; the value returned is
    zeta_target^(dlog(x) * target/(q-1)).
    """
    if x.is_zero():
        raise ZeroDivisionError("0 is not in the multiplicative group")
    fld = x.field
    if fld.q == 2:
        return CyclotomicNumber.one(target_conductor)
    if target_conductor % (fld.q - 1):
        raise ValueError(f"conductor {target_conductor} not divisible by {fld.q - 1}")
    step = target_conductor // (fld.q - 1)
    return zeta(target_conductor, fld.log[x.code] * step)
