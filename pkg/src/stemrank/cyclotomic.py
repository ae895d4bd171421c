"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

A value is stored over the power basis 1, z, ..., z^(n-1) with z = exp(2 pi i/n),
reduced modulo the n-th cyclotomic polynomial so that equal values have equal
coefficient lists.  Coefficients are kept as integer numerators over one common
positive denominator.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

MAX_CONDUCTOR = 5040


class CyclotomicError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by every Phi_d with d | n, d < n
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]  # den is monic
        out[k] = c
        if c:
            for j, b in enumerate(den):
                num[k + j] -= c * b
    if any(num[:dd]):
        raise CyclotomicError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(n: int, coeffs: list[int]) -> list[int]:
    """Reduce integer coefficients (any length) mod Phi_n; returns length n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        a = c[k]
        if a:
            base = k - deg
            for j in range(deg + 1):
                c[base + j] -= a * phi[j]
    c = c[:deg]
    c.extend([0] * (n - len(c)))
    return c


class CycNum:
    """An element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("n", "nums", "den")

    def __init__(self, n: int, coeffs: Iterable = (), den: int = 1, *, _reduced: bool = False):
        if n < 1:
            raise ValueError("n must be positive")
        if n > MAX_CONDUCTOR:
            raise CyclotomicError(f"conductor {n} exceeds bound {MAX_CONDUCTOR}")
        coeffs = list(coeffs)
        if not _reduced and any(type(c) is not int for c in coeffs):
            common = 1
            for c in coeffs:
                common = math.lcm(common, Fraction(c).denominator)
            coeffs = [int(Fraction(c) * common) for c in coeffs]
            den *= common
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, coeffs = -den, [-c for c in coeffs]
        if not _reduced:
            # fold exponents mod n first
            folded = [0] * n
            for k, c in enumerate(coeffs):
                folded[k % n] += c
            coeffs = _reduce(n, folded)
        g = den
        for c in coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            coeffs = [c // g for c in coeffs]
            den //= g
        self.n = n
        self.nums = tuple(coeffs)
        self.den = den

    # constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q, n: int = 1) -> "CycNum":
        q = Fraction(q)
        return cls(n, [q.numerator] + [0] * (n - 1), q.denominator, _reduced=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        c = [0] * n
        c[k % n] = 1
        return cls(n, c)

    # accessors ----------------------------------------------------------

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.nums]

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def as_int(self) -> int:
        q = self.as_rational()
        if q.denominator != 1:
            raise CyclotomicError(f"{q} is not an integer")
        return q.numerator

    def __complex__(self) -> complex:
        w = cmath.exp(2j * math.pi / self.n)
        return complex(sum((c * w**k for k, c in enumerate(self.nums) if c), 0j) / self.den)

    def __float__(self) -> float:
        return complex(self).real

    # conductor handling -------------------------------------------------

    def lift(self, m: int) -> "CycNum":
        """Embed into Q(zeta_m) for a multiple m of n (z_n -> z_m^(m/n))."""
        if m == self.n:
            return self
        if m % self.n:
            raise CyclotomicError(f"{m} is not a multiple of {self.n}")
        step = m // self.n
        c = [0] * m
        for k, a in enumerate(self.nums):
            c[k * step] = a
        return CycNum(m, c, self.den)

    def _common(self, other) -> tuple["CycNum", "CycNum"]:
        if not isinstance(other, CycNum):
            other = CycNum.rational(other, self.n)
            if other.n != self.n:
                other = other.lift(self.n)
        if other.n == self.n:
            return self, other
        m = math.lcm(self.n, other.n)
        if m > MAX_CONDUCTOR:
            raise CyclotomicError(f"common conductor {m} exceeds bound {MAX_CONDUCTOR}")
        return self.lift(m), other.lift(m)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        d = math.lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return CycNum(a.n, [x * fa + y * fb for x, y in zip(a.nums, b.nums)], d, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-x for x in self.nums], self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNum) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            q = Fraction(other)
            return CycNum(self.n, [x * q.numerator for x in self.nums], self.den * q.denominator, _reduced=True)
        a, b = self._common(other)
        n = a.n
        deg = totient(n)
        prod = [0] * (2 * deg)
        for i in range(deg):
            x = a.nums[i]
            if x:
                for j in range(deg):
                    y = b.nums[j]
                    if y:
                        prod[i + j] += x * y
        return CycNum(n, _reduce(n, prod), a.den * b.den, _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> Fraction:
        """Field norm to Q: the product of all Galois conjugates."""
        prod = CycNum.rational(1, self.n)
        for k in range(1, self.n + 1):
            if math.gcd(k, self.n) == 1:
                prod = prod * galois(self, k)
        return prod.as_rational()

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum.rational(1 / self.as_rational(), self.n)
        # a^-1 = (product of the other conjugates) / N(a)
        prod = CycNum.rational(1, self.n)
        for k in range(2, self.n + 1):
            if math.gcd(k, self.n) == 1:
                prod = prod * galois(self, k)
        norm = (prod * self).as_rational()
        return prod * (1 / norm)

    def conjugate(self) -> "CycNum":
        return galois(self, -1)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.n == self.n:
            return self.nums == other.nums and self.den == other.den
        a, b = self._common(other)
        return a.nums == b.nums and a.den == b.den

    def __hash__(self):
        # consistent with __eq__ only between values of the same conductor
        # (and with int/Fraction for rational values)
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.n, self.nums, self.den))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.n}^{k}")
        return "CycNum(" + (" + ".join(terms) or "0") + ")"

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        n = int(obj["n"])
        coeffs = [Fraction(int(a), int(b)) for a, b in obj["coeffs"]]
        if len(coeffs) != n:
            raise ValueError("coefficient list length must equal n")
        return cls(n, coeffs)


def galois(a: CycNum, k: int) -> CycNum:
    """Apply the automorphism z -> z^k (k coprime to n); k = -1 is complex conjugation."""
    n = a.n
    if math.gcd(k % n if n > 1 else 1, n) != 1:
        raise CyclotomicError(f"{k} is not coprime to {n}")
    if a.is_rational():
        return a
    c = [0] * n
    for j, x in enumerate(a.nums):
        if x:
            c[(j * k) % n] += x
    return CycNum(n, c, a.den)


def as_rational(a: CycNum) -> Fraction:
    return a.as_rational()
