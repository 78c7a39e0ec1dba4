"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Values are stored as integer coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(e)-1) of Q[x]/Phi_e(x), together with a single
positive denominator.  All arithmetic is exact; there is no floating
point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi is defined for positive integers")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            result *= p - 1
            m //= p
            while m % p == 0:
                result *= p
                m //= p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic), lowest degree first."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e(x), constant term first."""
    if e == 1:
        return (-1, 1)
    # x^e - 1 divided by the product of Phi_d for proper divisors d of e.
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Ring:
    """Cached reduction data for a fixed conductor."""

    def __init__(self, e: int):
        self.e = e
        self.phi = euler_phi(e)
        poly = cyclotomic_polynomial(e)
        assert len(poly) == self.phi + 1 and poly[-1] == 1
        # power_rows[k] = coefficients of x^k mod Phi_e over the power basis.
        rows: list[tuple[int, ...]] = []
        cur = [0] * self.phi
        for k in range(max(e, 2 * self.phi - 1)):
            if k < self.phi:
                cur = [0] * self.phi
                cur[k] = 1
            else:
                top = cur[self.phi - 1]
                shifted = [0] + cur[:-1]
                cur = [a - top * b for a, b in zip(shifted, poly[: self.phi])]
            rows.append(tuple(cur))
        self.power_rows = rows

    def reduce_pairs(self, pairs) -> list[int]:
        """Reduce a sparse sum of c*x^k (k may exceed phi) to the power basis."""
        out = [0] * self.phi
        rows = self.power_rows
        phi = self.phi
        for k, c in pairs:
            if c == 0:
                continue
            k %= self.e
            if k < phi:
                out[k] += c
            else:
                row = rows[k]
                for i in range(phi):
                    ri = row[i]
                    if ri:
                        out[i] += c * ri
        return out


@lru_cache(maxsize=None)
def _ring(e: int) -> _Ring:
    return _Ring(e)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
        if g == 1:
            break
    if g > 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class CyclotomicNumber:
    """An exact element of Q(zeta_e) over the power basis of Q[x]/Phi_e(x).

    Instances are immutable.  Values with different stored conductors
    compare equal iff they agree after lifting to the least common
    conductor.
    """

    __slots__ = ("conductor", "num", "den")

    def __init__(self, conductor: int, num, den: int = 1):
        ring = _ring(conductor)
        if len(num) != ring.phi:
            raise ValueError(f"need {ring.phi} coefficients at conductor {conductor}")
        object.__setattr__(self, "conductor", conductor)
        n, d = _normalize([int(a) for a in num], int(den))
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, *a):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value, conductor: int = 1) -> "CyclotomicNumber":
        f = Fraction(value)
        phi = _ring(conductor).phi
        num = [0] * phi
        num[0] = f.numerator
        return CyclotomicNumber(conductor, num, f.denominator)

    @staticmethod
    def zero(conductor: int = 1) -> "CyclotomicNumber":
        return CyclotomicNumber.from_rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> "CyclotomicNumber":
        return CyclotomicNumber.from_rational(1, conductor)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def as_int(self) -> int:
        f = self.as_rational()
        if f.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return f.numerator

    def coefficients(self) -> list[Fraction]:
        return [Fraction(a, self.den) for a in self.num]

    # -- conductor handling --------------------------------------------

    def lift(self, m: int) -> "CyclotomicNumber":
        """Rewrite at conductor m (the current conductor must divide m)."""
        e = self.conductor
        if m == e:
            return self
        if m % e:
            raise ValueError(f"cannot lift conductor {e} to non-multiple {m}")
        step = m // e
        ring = _ring(m)
        out = ring.reduce_pairs((i * step, c) for i, c in enumerate(self.num) if c)
        return CyclotomicNumber(m, out, self.den)

    def _common(self, other: "CyclotomicNumber"):
        e = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(e), other.lift(e), e

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "CyclotomicNumber":
        if isinstance(value, CyclotomicNumber):
            return value
        return CyclotomicNumber.from_rational(value)

    def __add__(self, other) -> "CyclotomicNumber":
        other = self._coerce(other)
        a, b, e = self._common(other)
        da, db = a.den, b.den
        num = [x * db + y * da for x, y in zip(a.num, b.num)]
        return CyclotomicNumber(e, num, da * db)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.conductor, [-a for a in self.num], self.den)

    def __sub__(self, other) -> "CyclotomicNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CyclotomicNumber":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CyclotomicNumber":
        other = self._coerce(other)
        a, b, e = self._common(other)
        ring = _ring(e)
        phi = ring.phi
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:phi])
        rows = ring.power_rows
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = rows[k]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return CyclotomicNumber(e, out, a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CyclotomicNumber":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicNumber.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Image under zeta_e -> zeta_e^(-1) (complex conjugation on characters)."""
        return self.galois(-1)

    def galois(self, k: int) -> "CyclotomicNumber":
        """Image under zeta_e -> zeta_e^k for k coprime to the conductor."""
        e = self.conductor
        k %= e
        if gcd(k, e) != 1:
            raise ValueError(f"exponent {k} is not coprime to conductor {e}")
        ring = _ring(e)
        out = ring.reduce_pairs((i * k, c) for i, c in enumerate(self.num) if c)
        return CyclotomicNumber(e, out, self.den)

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b, _ = self._common(other)
        return a.num == b.num and a.den == b.den

    __hash__ = None  # equality crosses conductors; no canonical cheap hash

    def sort_key(self, conductor: int) -> tuple:
        """Deterministic total order key among values liftable to `conductor`."""
        v = self.lift(conductor)
        return tuple(Fraction(a, v.den) for a in v.num)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coefficients": [f"{a}/{self.den}" for a in self.num],
        }

    @staticmethod
    def from_json(data: dict) -> "CyclotomicNumber":
        coeffs = [Fraction(s) for s in data["coefficients"]]
        den = 1
        for f in coeffs:
            den = den * f.denominator // gcd(den, f.denominator)
        num = [int(f * den) for f in coeffs]
        return CyclotomicNumber(data["conductor"], num, den)

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.as_rational())
        terms = []
        for i, a in enumerate(self.num):
            if not a:
                continue
            c = Fraction(a, self.den)
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z{self.conductor}^{i}" if i > 1 else f"z{self.conductor}")
            else:
                terms.append(f"{c}*z{self.conductor}^{i}" if i > 1 else f"{c}*z{self.conductor}")
        return " + ".join(terms) if terms else "0"


def zeta(e: int, k: int = 1) -> CyclotomicNumber:
    """The root of unity zeta_e^k, stored at its exact order as conductor."""
    k %= e
    g = gcd(e, k) if k else e
    ring = _ring(e // g)
    num = ring.reduce_pairs([(k // g, 1)])
    return CyclotomicNumber(e // g, num)


def root_of_unity_sum(e: int, multiplicities: dict[int, int]) -> CyclotomicNumber:
    """Sum of m copies of zeta_e^k for each (k, m) pair, reduced.

    The stored conductor is e divided by the gcd of the exponent support,
    so a sum of m-th roots of unity is stored at a conductor dividing m.
    """
    pairs = [(k % e, c) for k, c in multiplicities.items() if c]
    if not pairs:
        return CyclotomicNumber.zero()
    g = e
    for k, _ in pairs:
        g = gcd(g, k)
        if g == 1:
            break
    conductor = e // g
    ring = _ring(conductor)
    num = ring.reduce_pairs((k // g, c) for k, c in pairs)
    return CyclotomicNumber(conductor, num)


def cyclotomic_arith(a: CyclotomicNumber, b: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """Dispatch form used by the CLI report layer: op in {'add', 'mul'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def complex_conjugate(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.conjugate()
