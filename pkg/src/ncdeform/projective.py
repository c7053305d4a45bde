"""The right module on functions of (x, k) in R x Z_n and its connection.

Generators act on the right by

    (f W)(x, k)  = W(x, k) f(x - eps, k - 1)
    (f W*)(x, k) = W(x + eps, k + 1) f(x + eps, k + 1)
    (f L)(x, k)  = exp(2 pi i (x - m k / n)) f(x, k)

with eps = m/n + theta and weight
W(x, k) = sqrt(mu + sin(2 pi (x - m k / n) - pi theta) / cos(pi theta)).
Module elements are closures over dual numbers, so x-derivatives are exact
and every identity below holds pointwise up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dual
from .errors import AlphabetMismatch
from .params import DeformParams
from .polynomial import NCPolynomial
from .rewrite import ReductionSystem
from .words import TORUS, L, LS, W, WS

TWO_PI = 2 * math.pi
RINV = "R^-1"


@dataclass(frozen=True)
class ModuleParams:
    m: int
    n: int
    params: DeformParams

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.eps == 0:
            raise ValueError("eps = m/n + theta must be nonzero")

    @property
    def eps(self) -> float:
        return (self.m + self.n * self.params.theta) / self.n

    def y(self, x, k):
        return x - self.m * k / self.n


class ModuleElement:
    """Function on R x Z_n; ``fn(x, k)`` must accept dual-number ``x``."""

    __slots__ = ("fn", "n")

    def __init__(self, fn, n: int):
        self.fn = fn
        self.n = n

    def __call__(self, x, k):
        return self.fn(x, k % self.n)

    def value(self, x, k):
        return dual.value(self(x, k))

    def dvalue(self, x, k):
        return dual.value(self(dual.lift(x), k).b)

    def derivative(self) -> ModuleElement:
        fn = self.fn
        return ModuleElement(lambda x, k: fn(dual.lift(x), k).b, self.n)

    def __add__(self, other):
        f, g = self.fn, other.fn
        return ModuleElement(lambda x, k: f(x, k) + g(x, k), self.n)

    def __sub__(self, other):
        f, g = self.fn, other.fn
        return ModuleElement(lambda x, k: f(x, k) - g(x, k), self.n)

    def scale(self, c) -> ModuleElement:
        f = self.fn
        return ModuleElement(lambda x, k: c * f(x, k), self.n)

    def times(self, g) -> ModuleElement:
        """Pointwise product with a function g(x, k)."""
        f = self.fn
        return ModuleElement(lambda x, k: g(x, k) * f(x, k), self.n)


def zero_element(n: int) -> ModuleElement:
    return ModuleElement(lambda x, k: 0.0 * x, n)


def seed(n: int, poly=(1.0,), width=1.0, center=0.0, freq=0.0, k_weights=None) -> ModuleElement:
    """Gaussian x polynomial x plane wave, with an optional weight per k."""
    poly = tuple(poly)
    kw = tuple(k_weights) if k_weights is not None else (1.0,) * n

    def fn(x, k):
        u = x - center
        p = 0.0
        for c in reversed(poly):
            p = p * x + c
        return kw[k] * p * dual.exp(-width * u * u + 1j * freq * x)

    return ModuleElement(fn, n)


def gaussian(n: int) -> ModuleElement:
    """exp(-x^2) in every k."""
    return seed(n)


def random_seed(n: int, rng) -> ModuleElement:
    poly = tuple(rng.normal(size=3) + 1j * rng.normal(size=3))
    poly = (poly[0] + 2.0,) + poly[1:]
    return seed(
        n,
        poly=poly,
        width=float(rng.uniform(0.05, 0.3)),
        center=float(rng.uniform(-1, 1)),
        freq=float(rng.uniform(-2, 2)),
        k_weights=tuple(rng.uniform(0.5, 1.5, size=n) * np.exp(1j * rng.uniform(0, TWO_PI, size=n))),
    )


def radicand(x, k, mp: ModuleParams):
    p = mp.params
    return p.mu + dual.sin(TWO_PI * mp.y(x, k) - math.pi * p.theta) / p.cos_pi_theta


def weight(x, k, mp: ModuleParams):
    return dual.sqrt(radicand(x, k, mp))


def r_multiplier(x, k, mp: ModuleParams):
    """Scalar by which mu + z L + zbar L* acts: mu + sin(2 pi y + pi theta)/cos(pi theta)."""
    p = mp.params
    return p.mu + dual.sin(TWO_PI * mp.y(x, k) + math.pi * p.theta) / p.cos_pi_theta


def act(phi: ModuleElement, g, mp: ModuleParams) -> ModuleElement:
    """Right action of one generator (a letter or ``RINV``)."""
    f = phi.fn
    n = mp.n
    eps = mp.eps
    if g == L:
        return ModuleElement(lambda x, k: dual.exp(2j * math.pi * mp.y(x, k)) * f(x, k), n)
    if g == LS:
        return ModuleElement(lambda x, k: dual.exp(-2j * math.pi * mp.y(x, k)) * f(x, k), n)
    if g == W:
        return ModuleElement(lambda x, k: weight(x, k, mp) * f(x - eps, (k - 1) % n), n)
    if g == WS:
        return ModuleElement(lambda x, k: weight(x + eps, k + 1, mp) * f(x + eps, (k + 1) % n), n)
    if g == RINV:
        return ModuleElement(lambda x, k: f(x, k) / r_multiplier(x, k, mp), n)
    raise ValueError(f"unknown generator {g!r}")


def act_word(phi, word, mp):
    for g in word:
        phi = act(phi, g, mp)
    return phi


def act_poly(phi: ModuleElement, p: NCPolynomial, mp: ModuleParams) -> ModuleElement:
    """phi . p, extended linearly from words."""
    if p.alphabet is not TORUS and any(p.words()):
        raise AlphabetMismatch("the module carries the torus alphabet only")
    parts = [(p.domain.to_complex(c), act_word(phi, word, mp).fn) for word, c in p.items()]

    def fn(x, k):
        acc = 0.0 * x
        for c, g in parts:
            acc = acc + c * g(x, k)
        return acc

    return ModuleElement(fn, phi.n)


# -- derivations ---------------------------------------------------------

class ExtendedPolynomial:
    """Linear combination of words that may contain R^-1 = (mu + z L + zbar L*)^-1."""

    def __init__(self, terms):
        self.terms = [(complex(c), tuple(w)) for c, w in terms if c != 0]

    def act_on(self, phi: ModuleElement, mp: ModuleParams) -> ModuleElement:
        parts = [(c, act_word(phi, w, mp).fn) for c, w in self.terms]

        def fn(x, k):
            acc = 0.0 * x
            for c, g in parts:
                acc = acc + c * g(x, k)
            return acc

        return ModuleElement(fn, phi.n)

    def evaluate(self, mats, r_inverse, dim):
        """Matrix image given generator matrices and the matrix of R^-1."""
        out = np.zeros((dim, dim), dtype=complex)
        for c, w in self.terms:
            acc = np.eye(dim, dtype=complex)
            for g in w:
                acc = acc @ (r_inverse if g == RINV else mats[g])
            out += c * acc
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = {RINV: RINV}
        names.update({i: TORUS.letters[i] for i in range(4)})
        return " + ".join(f"({c:.6g})*" + " ".join(names[g] for g in w) for c, w in self.terms)


def derivation(g, j: int, params: DeformParams, printed: bool = False) -> ExtendedPolynomial:
    """d_j applied to a generator.

    d1 L = iL, d2 L = 0, d2 W = iW and
    d1 W = (i/2)(z L - zbar L*) R^-1 W.  ``printed=True`` drops the 1/2,
    which breaks the Leibniz rule.
    """
    z, zb = params.z, params.zbar
    half = 1.0 if printed else 0.5
    if j == 1:
        table = {
            L: [(1j, (L,))],
            LS: [(-1j, (LS,))],
            W: [(1j * half * z, (L, RINV, W)), (-1j * half * zb, (LS, RINV, W))],
            WS: [(1j * half * z, (WS, RINV, L)), (-1j * half * zb, (WS, RINV, LS))],
        }
    elif j == 2:
        table = {L: [], LS: [], W: [(1j, (W,))], WS: [(-1j, (WS,))]}
    else:
        raise ValueError("direction must be 1 or 2")
    return ExtendedPolynomial(table[g])


def connection(phi: ModuleElement, j: int, mp: ModuleParams) -> ModuleElement:
    """nabla_1 = (1/2 pi) d/dx and nabla_2 = (i/eps) x."""
    if j == 1:
        return phi.derivative().scale(1 / TWO_PI)
    if j == 2:
        c = 1j / mp.eps
        return phi.times(lambda x, k: c * x)
    raise ValueError("direction must be 1 or 2")


# -- checks --------------------------------------------------------------

def sample_points(n: int, count: int = 200, seed: int = 0, lo: float = -3.0, hi: float = 3.0):
    rng = np.random.default_rng(seed)
    xs = rng.uniform(lo, hi, size=count)
    ks = rng.integers(0, n, size=count)
    return [(float(x), int(k)) for x, k in zip(xs, ks)]


def max_abs(phi: ModuleElement, samples) -> float:
    return float(max(abs(phi.value(x, k)) for x, k in samples))


def leibniz_element(phi, a, j, mp, printed=False) -> ModuleElement:
    """nabla_j(phi a) - (nabla_j phi) a - phi (d_j a)."""
    lhs = connection(act(phi, a, mp), j, mp)
    rhs = act(connection(phi, j, mp), a, mp)
    der = derivation(a, j, mp.params, printed).act_on(phi, mp)
    return lhs - rhs - der


def leibniz_residual(phi, a, j, mp, samples, printed=False) -> float:
    return max_abs(leibniz_element(phi, a, j, mp, printed), samples)


def leibniz_table(phi, mp, samples, printed=False):
    names = dict(zip((L, LS, W, WS), TORUS.letters))
    return {f"{names[a]},{j}": leibniz_residual(phi, a, j, mp, samples, printed)
            for a in (L, LS, W, WS) for j in (1, 2)}


def curvature_element(phi, mp) -> ModuleElement:
    """[nabla_1, nabla_2] phi."""
    a = connection(connection(phi, 2, mp), 1, mp)
    b = connection(connection(phi, 1, mp), 2, mp)
    return a - b


def curvature_check(phi, mp, samples, guard: float = 0.1):
    """Ratio ([nabla_1, nabla_2] phi) / phi where |phi| > guard."""
    F = curvature_element(phi, mp)
    expected = 1j / (TWO_PI * mp.eps)
    ratios = []
    for x, k in samples:
        v = phi.value(x, k)
        if abs(v) > guard:
            ratios.append(complex(F.value(x, k)) / complex(v))
    if not ratios:
        raise ValueError("no sample point passes the |phi| guard")
    const = complex(np.mean(ratios))
    dev = max(abs(r - expected) for r in ratios)
    return {"constant": const, "expected": expected, "max_deviation": float(dev), "points": len(ratios)}


def relation_residuals(phi, mp, samples):
    """Pointwise size of phi . r for each defining relation r."""
    sys = ReductionSystem.torus(mp.params, backend="float")
    return {name: max_abs(act_poly(phi, rel, mp), samples) for name, rel in sys.relations().items()}


def derivative_check(phi, samples, h: float = 1e-6) -> float:
    """Largest gap between the exact x-derivative and a central difference."""
    return float(max(abs(phi.dvalue(x, k) - (phi.value(x + h, k) - phi.value(x - h, k)) / (2 * h))
                     for x, k in samples))


def radicand_minimum(mp: ModuleParams, count: int = 10_000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-3, 3, size=count)
    ks = rng.integers(0, mp.n, size=count)
    return float(np.min(radicand(xs, ks, mp)))


def residual_points(element: ModuleElement, samples):
    """(x, k, |value|) triples for plotting."""
    return [(x, k, float(abs(element.value(x, k)))) for x, k in samples]


def act_nf_consistency(phi, mp, samples, count: int = 20, max_degree: int = 4, seed: int = 0) -> float:
    """max |phi . NF(p) - phi . p| over random polynomials and samples."""
    from .polynomial import random_polynomial
    from .rewrite import normal_form

    sys = ReductionSystem.torus(mp.params, backend="float")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        p = random_polynomial(rng, sys.domain, max_degree)
        worst = max(worst, max_abs(act_poly(phi, normal_form(p, sys), mp) - act_poly(phi, p, mp), samples))
    return worst
