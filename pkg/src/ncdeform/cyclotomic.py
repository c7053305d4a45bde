"""Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are stored as an integer numerator vector in the power basis
1, zeta, ..., zeta^(d-1) (d = phi(M)) over a common positive integer
denominator.  Products are reduced modulo the M-th cyclotomic polynomial,
which is monic with integer coefficients, so reduction never leaves the
integers.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class CyclotomicField:
    """The field Q(zeta_M) with zeta_M = exp(2 pi i / M)."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # zeta^k reduced, for 0 <= k < max(M, 2d - 1)
        span = max(order, 2 * d - 1)
        powers = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(span):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(d):
                    vec[j] -= top * self.modulus[j]
        self._powers = tuple(powers)
        self._zeta = cmath.exp(2j * cmath.pi / order)
        self._basis_complex = tuple(self._zeta**k for k in range(d))

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("CyclotomicField", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"

    # -- constructors --------------------------------------------------
    def zero(self) -> Cyc:
        return Cyc(self, (0,) * self.degree, 1)

    def one(self) -> Cyc:
        return self.rational(1)

    def rational(self, value) -> Cyc:
        value = Fraction(value)
        num = [0] * self.degree
        num[0] = value.numerator
        return Cyc(self, num, value.denominator)

    def root(self, k: int) -> Cyc:
        """zeta_M ** k for any integer k."""
        return Cyc(self, self._powers[k % self.order], 1)

    def coerce(self, value) -> Cyc:
        if isinstance(value, Cyc):
            if value.field != self:
                raise TypeError(f"{value!r} is not an element of {self!r}")
            return value
        if isinstance(value, (int, Rational)):
            return self.rational(value)
        raise TypeError(f"cannot embed {type(value).__name__} exactly in {self!r}")

    # -- internal helpers ----------------------------------------------
    def _reduce(self, coeffs):
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                pw = self._powers[k]
                for j in range(d):
                    if pw[j]:
                        out[j] += c * pw[j]
        return out

    def _galois(self, elem: Cyc, j: int) -> Cyc:
        acc = [0] * self.degree
        for k, c in enumerate(elem.num):
            if c:
                pw = self._powers[(j * k) % self.order]
                for t in range(self.degree):
                    if pw[t]:
                        acc[t] += c * pw[t]
        return Cyc(self, acc, elem.den)


class Cyc:
    """Immutable element of a :class:`CyclotomicField`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Cyc):
            if other.field != self.field:
                raise TypeError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        num = [a * other.den + b * self.den for a, b in zip(self.num, other.num)]
        return Cyc(self.field, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyc(self.field, self.field._reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def conjugate(self) -> Cyc:
        return self.field._galois(self, -1)

    def norm(self) -> Fraction:
        """Field norm down to Q (product of all Galois conjugates)."""
        return (self * self._other_conjugates()).as_fraction()

    def _other_conjugates(self) -> Cyc:
        M = self.field.order
        acc = self.field.one()
        for j in range(2, M):
            if math.gcd(j, M) == 1:
                acc = acc * self.field._galois(self, j)
        return acc

    def inverse(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rest = self._other_conjugates()
        n = (self * rest).as_fraction()
        return rest / n

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyc(self.field, [c * other.denominator for c in self.num], self.den * other.numerator)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / conversion ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.field.rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.field.order, self.num, self.den))

    def __complex__(self):
        return sum(c * z for c, z in zip(self.num, self.field._basis_complex) if c) / self.den + 0j

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.num) if c]
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"Cyc[{self.field.order}]({body})"
