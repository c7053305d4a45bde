"""Coefficient domains: exact cyclotomic rationals and tolerant complex floats."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

from .cyclotomic import CyclotomicField, Cyc
from .params import DeformParams

DEFAULT_TOL = 1e-12


class ExactDomain:
    """Coefficients in Q(zeta_M); equality is exact."""

    name = "exact"

    def __init__(self, order: int):
        self.field = CyclotomicField(order)

    def __eq__(self, other):
        return isinstance(other, ExactDomain) and other.field == self.field

    def __hash__(self):
        return hash(("exact", self.field.order))

    def __repr__(self):
        return f"ExactDomain(order={self.field.order})"

    @property
    def zero(self):
        return self.field.zero()

    @property
    def one(self):
        return self.field.one()

    def coerce(self, value):
        return self.field.coerce(value)

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def conj(self, c):
        return c.conjugate()

    def to_complex(self, c) -> complex:
        return complex(c)

    def root(self, k: int):
        return self.field.root(k)


@dataclass(frozen=True)
class FloatDomain:
    """Complex floating point coefficients; a == b means |a - b| <= tol."""

    tol: float = DEFAULT_TOL
    name = "float"

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    def coerce(self, value):
        if isinstance(value, Cyc):
            return complex(value)
        if isinstance(value, Number):
            return complex(value)
        raise TypeError(f"cannot use {type(value).__name__} as a float coefficient")

    def is_zero(self, c) -> bool:
        return abs(c) <= self.tol

    def conj(self, c):
        return c.conjugate()

    def to_complex(self, c) -> complex:
        return complex(c)


@dataclass(frozen=True)
class Constants:
    """Named constants of the algebra as elements of a coefficient domain."""

    domain: object
    one: object
    i: object
    q: object
    qbar: object
    qhalf: object
    z: object
    zbar: object
    mu: object
    hbar: object
    _qhalf_step: int | None = None
    _theta: float = 0.0

    def qhalf_pow(self, k: int):
        """q^(k/2) with the principal convention q^(1/2) = exp(i pi theta)."""
        if self._qhalf_step is not None:
            return self.domain.root(self._qhalf_step * k)
        return cmath.exp(1j * math.pi * self._theta * k)

    def named(self):
        """Name -> value map in the order used by parser and printer."""
        return {
            "z": self.z,
            "zbar": self.zbar,
            "mu": self.mu,
            "hbar": self.hbar,
            "i": self.i,
            "q": self.q,
        }


def exact_order(theta: Fraction) -> int:
    """Cyclotomic order lcm(2N, 4) for theta = p/N; i must be in the field."""
    n = theta.denominator
    return 2 * n * 4 // math.gcd(2 * n, 4)


def make_domain(params: DeformParams, backend: str = "auto", tol: float = DEFAULT_TOL):
    """Pick the coefficient domain for ``params``.

    ``backend`` is ``"exact"``, ``"float"`` or ``"auto"`` (exact whenever
    both mu and theta are rational).
    """
    if backend == "auto":
        backend = "exact" if params.is_exact else "float"
    if backend == "exact":
        if not params.is_exact:
            raise ValueError("exact backend needs rational theta and rational mu")
        return ExactDomain(exact_order(params.theta_exact))
    if backend == "float":
        return FloatDomain(tol)
    raise ValueError(f"unknown backend {backend!r}")


def constants_for(params: DeformParams, domain) -> Constants:
    if isinstance(domain, ExactDomain):
        if not params.is_exact:
            raise ValueError("exact domain needs rational theta and rational mu")
        th = params.theta_exact
        M = domain.field.order
        if M % (2 * th.denominator) or M % 4:
            raise ValueError(f"{domain!r} does not contain exp(i pi theta) and i")
        step = th.numerator * M // (2 * th.denominator)
        qh = domain.root(step)
        qh_inv = domain.root(-step)
        i = domain.root(M // 4)
        two_cos = qh + qh_inv
        z = qh / (i * two_cos)
        hbar = (qh - qh_inv) / (i * two_cos)
        return Constants(
            domain=domain,
            one=domain.one,
            i=i,
            q=qh * qh,
            qbar=qh_inv * qh_inv,
            qhalf=qh,
            z=z,
            zbar=z.conjugate(),
            mu=domain.coerce(params.mu_exact),
            hbar=hbar,
            _qhalf_step=step,
        )
    qh = params.qhalf
    return Constants(
        domain=domain,
        one=1 + 0j,
        i=1j,
        q=params.q,
        qbar=params.q.conjugate(),
        qhalf=qh,
        z=params.z,
        zbar=params.zbar,
        mu=complex(params.mu),
        hbar=complex(params.hbar),
        _theta=params.theta,
    )
