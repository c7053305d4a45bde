"""Commutative polynomials in x, y, z and the Nambu-type Poisson bracket.

The deformation parameter mu is carried as a fourth, never-differentiated
variable so that brackets are exact symbolic identities in mu.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

_VARS = ("x", "y", "z", "mu")


class CommutativePoly3:
    """Polynomial in commuting x, y, z with coefficients in Q[mu]."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        acc = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            acc[mono] = acc.get(mono, 0) + c
        self.terms = {m: c for m, c in acc.items() if c != 0}

    @classmethod
    def var(cls, name):
        mono = tuple(int(v == name) for v in _VARS)
        return cls({mono: 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0, 0): c})

    def _lift(self, other):
        if isinstance(other, CommutativePoly3):
            return other
        if isinstance(other, (int, Fraction)):
            return CommutativePoly3.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CommutativePoly3(out)

    __radd__ = __add__

    def __neg__(self):
        return CommutativePoly3({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for (m1, c1), (m2, c2) in product(self.terms.items(), other.terms.items()):
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
        return CommutativePoly3(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = CommutativePoly3.const(1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, var: str) -> CommutativePoly3:
        i = _VARS.index(var)
        if i == 3:
            raise ValueError("mu is a parameter, not a coordinate")
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                dm = list(m)
                dm[i] -= 1
                out[tuple(dm)] = c * m[i]
        return CommutativePoly3(out)

    def gradient(self):
        return tuple(self.diff(v) for v in _VARS[:3])

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(_VARS, m) if e]
            mono = "*".join(factors)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else f"{mag}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"CommutativePoly3({self})"


x = CommutativePoly3.var("x")
y = CommutativePoly3.var("y")
z = CommutativePoly3.var("z")
mu = CommutativePoly3.var("mu")


def torus_sphere_polynomial() -> CommutativePoly3:
    """C = (x^2 + y^2 - mu)^2 / 2 + z^2 / 2 - 1/2."""
    half = Fraction(1, 2)
    return half * (x**2 + y**2 - mu) ** 2 + half * z**2 - half


def poisson_bracket(f, g, C=None) -> CommutativePoly3:
    """{f, g} = grad C . (grad f x grad g)."""
    if C is None:
        C = torus_sphere_polynomial()
    cx, cy, cz = C.gradient()
    fx, fy, fz = f.gradient()
    gx, gy, gz = g.gradient()
    return cx * (fy * gz - fz * gy) + cy * (fz * gx - fx * gz) + cz * (fx * gy - fy * gx)
