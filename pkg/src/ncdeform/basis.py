"""The T/S basis of the deformed torus algebra.

    T_m = q^(m1 m2 / 2) L^m1 W^m2      (m2 >= 0)
    S_n = q^(-n1 n2 / 2) L^n1 (W*)^n2  (n2 >= 1)

with L^-k meaning (L*)^k.  Products close within each family:
T_m T_n = q^(-m x n / 2) T_(m+n) and S_m S_n = q^(m x n / 2) S_(m+n),
where m x n = m1 n2 - n1 m2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotClosed
from .polynomial import NCPolynomial
from .rewrite import ReductionSystem, normal_form
from .words import L, LS, W, WS


@dataclass(frozen=True, order=True)
class BasisIndex:
    kind: str
    m1: int
    m2: int

    def __post_init__(self):
        if self.kind == "T":
            if self.m2 < 0:
                raise ValueError("T indices need m2 >= 0")
        elif self.kind == "S":
            if self.m2 < 1:
                raise ValueError("S indices need m2 >= 1")
        else:
            raise ValueError(f"unknown basis kind {self.kind!r}")

    @property
    def vec(self):
        return (self.m1, self.m2)

    def word(self):
        lam = (L,) * self.m1 if self.m1 >= 0 else (LS,) * -self.m1
        return lam + ((W,) if self.kind == "T" else (WS,)) * self.m2

    def __str__(self):
        return f"{self.kind}({self.m1},{self.m2})"


def T(m1, m2):
    return BasisIndex("T", m1, m2)


def S(n1, n2):
    return BasisIndex("S", n1, n2)


def cross(a, b) -> int:
    return a[0] * b[1] - b[0] * a[1]


def _phase_exponent(idx: BasisIndex) -> int:
    """Exponent k of q^(k/2) in the definition of the basis element."""
    k = idx.m1 * idx.m2
    return k if idx.kind == "T" else -k


def basis_element(idx: BasisIndex, sys: ReductionSystem) -> NCPolynomial:
    c = sys.constants.qhalf_pow(_phase_exponent(idx))
    return NCPolynomial({idx.word(): c}, sys.domain)


class BasisVector:
    """Coordinates in the T/S basis; zero coordinates are not stored."""

    __hash__ = None

    def __init__(self, coords, domain):
        self.domain = domain
        coords = {k: domain.coerce(v) for k, v in coords.items()}
        self.coords = {k: v for k, v in sorted(coords.items()) if not domain.is_zero(v)}

    def __getitem__(self, idx):
        return self.coords.get(idx, self.domain.zero)

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, BasisVector):
            return NotImplemented
        keys = set(self.coords) | set(other.coords)
        return all(self.domain.is_zero(self[k] - other[k]) for k in keys)

    def to_json(self):
        out = []
        for idx, c in self.coords.items():
            z = self.domain.to_complex(c)
            out.append({"kind": idx.kind, "m1": idx.m1, "m2": idx.m2, "re": z.real, "im": z.imag})
        return out

    def __repr__(self):
        return "BasisVector({" + ", ".join(f"{k}: {complex(v):.6g}" for k, v in self.coords.items()) + "})"


def classify_word(word):
    """Basis index of an irreducible word, or None if ``word`` is reducible."""
    i = 0
    m1 = 0
    while i < len(word) and word[i] in (L, LS):
        m1 += 1 if word[i] == L else -1
        i += 1
    lam = word[:i]
    if lam and any(a != lam[0] for a in lam):
        return None
    rest = word[i:]
    if not rest:
        return T(m1, 0)
    if any(a != rest[0] for a in rest):
        return None
    return T(m1, len(rest)) if rest[0] == W else S(m1, len(rest))


def to_basis(p: NCPolynomial, sys: ReductionSystem) -> BasisVector:
    """Normal form of ``p`` expressed in T/S coordinates."""
    nf = normal_form(p, sys)
    consts = sys.constants
    coords = {}
    for word, c in nf.items():
        idx = classify_word(word)
        if idx is None:
            raise AssertionError(f"normal form produced reducible word {word}")
        coords[idx] = c * consts.qhalf_pow(-_phase_exponent(idx))
    return BasisVector(coords, sys.domain)


def from_basis(v: BasisVector, sys: ReductionSystem) -> NCPolynomial:
    acc = NCPolynomial.zero(sys.domain)
    for idx, c in v.coords.items():
        acc = acc + basis_element(idx, sys) * c
    return acc


def product_phase_exponent(kind: str, a, b) -> int:
    """k such that the product phase of family ``kind`` is q^(k/2)."""
    return -cross(a, b) if kind == "T" else cross(a, b)


def basis_product(a: BasisIndex, b: BasisIndex, sys: ReductionSystem):
    """Closed-form product of two basis elements of the same family.

    Returns ``(phase, index)``.

    Raises
    ------
    NotClosed
        For a T index times an S index (either order).
    """
    if a.kind != b.kind:
        raise NotClosed(f"{a} * {b} mixes the T and S families")
    k = product_phase_exponent(a.kind, a.vec, b.vec)
    m1, m2 = a.m1 + b.m1, a.m2 + b.m2
    idx = BasisIndex(a.kind if m2 > 0 else "T", m1, m2)
    return sys.constants.qhalf_pow(k), idx


def basis_indices(rng: int):
    """All T and S indices with every component bounded by ``rng`` in size."""
    ts = [T(m1, m2) for m1, m2 in product(range(-rng, rng + 1), range(0, rng + 1))]
    ss = [S(n1, n2) for n1, n2 in product(range(-rng, rng + 1), range(1, rng + 1))]
    return ts, ss


def product_law_check(sys: ReductionSystem, rng: int):
    """Compare the closed product law with rewriting for all pairs in range."""
    ts, ss = basis_indices(rng)
    d = sys.domain
    worst = 0.0
    failures = []
    checked = 0
    for family in (ts, ss):
        for a, b in product(family, family):
            phase, idx = basis_product(a, b, sys)
            got = to_basis(basis_element(a, sys) * basis_element(b, sys), sys)
            expected = BasisVector({idx: phase}, d)
            checked += 1
            diff = max((abs(d.to_complex(got[k] - expected[k])) for k in set(got.coords) | {idx}), default=0.0)
            worst = max(worst, diff)
            if got != expected:
                failures.append(f"{a}*{b}")
    return {
        "check": "product_law",
        "range": rng,
        "backend": d.name,
        "pairs": checked,
        "max_discrepancy": worst,
        "failures": failures[:20],
        "pass": not failures,
    }


def cocycle_check(sys: ReductionSystem, rng: int = 3):
    """phase(a,b) phase(a+b,c) == phase(b,c) phase(a,b+c) for a, b, c in [-rng, rng]^2.

    Both families are checked.  Phases are field elements, cached by
    exponent, so the identity is tested in the coefficient domain itself.
    """
    d = sys.domain
    qh = sys.constants.qhalf_pow
    verdicts = {}

    def agree(lhs, rhs):
        if (lhs, rhs) not in verdicts:
            verdicts[lhs, rhs] = d.is_zero(qh(lhs[0]) * qh(lhs[1]) - qh(rhs[0]) * qh(rhs[1]))
        return verdicts[lhs, rhs]

    vecs = list(product(range(-rng, rng + 1), repeat=2))
    bad = 0
    for kind in ("T", "S"):
        for a, b, c in product(vecs, repeat=3):
            ab = (a[0] + b[0], a[1] + b[1])
            bc = (b[0] + c[0], b[1] + c[1])
            lhs = (product_phase_exponent(kind, a, b), product_phase_exponent(kind, ab, c))
            rhs = (product_phase_exponent(kind, b, c), product_phase_exponent(kind, a, bc))
            if not agree(lhs, rhs):
                bad += 1
    return {"check": "cocycle", "range": rng, "triples": 2 * len(vecs) ** 3, "violations": bad, "pass": bad == 0}


def casimir_expression(sys: ReductionSystem, printed: bool = False) -> NCPolynomial:
    """(WW* + W*W - 2 mu)^2 / 4 + (WW* - W*W)^2 / (4 hbar^2).

    ``printed=True`` uses hbar^4 in the second denominator instead; that
    variant does not reduce to the unit.
    """
    c = sys.constants
    one = NCPolynomial.constant(1, sys.domain)
    ww = NCPolynomial.monomial((W, WS), sys.domain)
    ww_ = NCPolynomial.monomial((WS, W), sys.domain)
    plus = ww + ww_ - one * (2 * c.mu)
    minus = ww - ww_
    h2 = c.hbar * c.hbar
    denom = h2 * h2 if printed else h2
    quarter = sys.domain.coerce(Fraction(1, 4))
    return plus * plus * quarter + minus * minus * (quarter / denom)


def lambda_reconstruction(sys: ReductionSystem) -> NCPolynomial:
    """(WW* - W*W) / (2 hbar) + (i/2)(WW* + W*W - 2 mu), which equals L."""
    c = sys.constants
    one = NCPolynomial.constant(1, sys.domain)
    ww = NCPolynomial.monomial((W, WS), sys.domain)
    ww_ = NCPolynomial.monomial((WS, W), sys.domain)
    half = sys.domain.coerce(Fraction(1, 2))
    return (ww - ww_) * (half / c.hbar) + (ww + ww_ - one * (2 * c.mu)) * (c.i * half)


def casimir_reduce(sys: ReductionSystem, printed: bool = False) -> NCPolynomial:
    if sys.domain.is_zero(sys.constants.hbar):
        raise ZeroDivisionError("the Casimir element needs hbar != 0")
    return normal_form(casimir_expression(sys, printed), sys)
