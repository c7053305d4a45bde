"""Forward-mode dual numbers a + b*d with d^2 = 0.

Components may themselves be dual numbers, so nesting gives exact higher
derivatives.  The elementary functions below accept plain numbers, numpy
arrays and duals alike.
"""

from __future__ import annotations

import numpy as np


class Dual:
    __slots__ = ("a", "b")

    def __init__(self, a, b=0.0):
        self.a = a
        self.b = b

    def __add__(self, o):
        if isinstance(o, Dual):
            return Dual(self.a + o.a, self.b + o.b)
        return Dual(self.a + o, self.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Dual):
            return Dual(self.a * o.a, self.a * o.b + self.b * o.a)
        return Dual(self.a * o, self.b * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Dual):
            return self * reciprocal(o)
        return Dual(self.a / o, self.b / o)

    def __rtruediv__(self, o):
        return reciprocal(self) * o

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"


def reciprocal(u):
    if isinstance(u, Dual):
        r = reciprocal(u.a)
        return Dual(r, -u.b * r * r)
    return 1 / u


def exp(u):
    if isinstance(u, Dual):
        e = exp(u.a)
        return Dual(e, e * u.b)
    return np.exp(u)


def sin(u):
    if isinstance(u, Dual):
        return Dual(sin(u.a), cos(u.a) * u.b)
    return np.sin(u)


def cos(u):
    if isinstance(u, Dual):
        return Dual(cos(u.a), -sin(u.a) * u.b)
    return np.cos(u)


def sqrt(u):
    if isinstance(u, Dual):
        s = sqrt(u.a)
        return Dual(s, u.b / (2 * s))
    return np.sqrt(u)


def lift(x):
    """Seed ``x`` as the independent variable: x + 1*d."""
    return Dual(x, 1.0)


def value(u):
    """Innermost value of a (possibly nested) dual."""
    while isinstance(u, Dual):
        u = u.a
    return u
