"""Reduction system for the deformed torus algebra and its confluence check.

The eight rules replace each length-two left-hand side by a combination
of smaller words.  Normal forms are computed leftmost-first with rules
tried in their listed order; once every overlap ambiguity resolves, the
irreducible words form a basis of the quotient algebra.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace

from .domains import DEFAULT_TOL, ExactDomain, constants_for, make_domain
from .errors import AlphabetMismatch, IncompatibleRule, NotConfluent, StepCapExceeded
from .params import DeformParams
from .polynomial import NCPolynomial
from .words import TORUS, L, LS, W, WS, Word

DEFAULT_STEP_CAP = 10**6


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def order_compare(a: Word, b: Word) -> Order:
    """Partial order compatible with the reduction system.

    Shorter words are smaller.  Words of equal length are comparable only
    if each letter occurs equally often in both; they are then ordered
    lexicographically with L < L* < W < W*.
    """
    a, b = tuple(a), tuple(b)
    if a == b:
        return Order.EQUAL
    if len(a) != len(b):
        return Order.LESS if len(a) < len(b) else Order.GREATER
    if Counter(a) != Counter(b):
        return Order.INCOMPARABLE
    return Order.LESS if a < b else Order.GREATER


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Word
    rhs: NCPolynomial

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        if len(self.lhs) < 2:
            raise IncompatibleRule(f"{self.name}: left-hand side must have length >= 2")
        for word in self.rhs.words():
            if order_compare(word, self.lhs) is not Order.LESS:
                raise IncompatibleRule(
                    f"{self.name}: {TORUS.spell(word)} is not below {TORUS.spell(self.lhs)}"
                )

    def relation(self) -> NCPolynomial:
        """The ideal generator lhs - rhs."""
        return NCPolynomial.monomial(self.lhs, self.rhs.domain) - self.rhs


@dataclass(frozen=True)
class Ambiguity:
    left: RewriteRule
    right: RewriteRule
    overlap: Word
    right_position: int
    left_reduct: NCPolynomial
    right_reduct: NCPolynomial
    kind: str = "overlap"

    def overlap_text(self):
        return TORUS.spell(self.overlap)


@dataclass(frozen=True)
class ReductionSystem:
    """Immutable list of rewrite rules bound to a parameter point and domain."""

    rules: tuple
    params: DeformParams
    domain: object
    step_cap: int = DEFAULT_STEP_CAP
    name: str = "S1-S8"
    _by_first: dict = field(default=None, repr=False, compare=False)
    _constants: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for rule in self.rules:
            index.setdefault(rule.lhs[0], []).append(rule)
        object.__setattr__(self, "_by_first", index)
        object.__setattr__(self, "_constants", constants_for(self.params, self.domain))

    @classmethod
    def torus(cls, params: DeformParams, backend="auto", tol=DEFAULT_TOL, step_cap=DEFAULT_STEP_CAP):
        """The rules S1..S8 for the given parameters."""
        domain = make_domain(params, backend, tol)
        c = constants_for(params, domain)

        def poly(*terms):
            return NCPolynomial(list(terms), domain)

        rules = (
            RewriteRule("S1", (W, L), poly(((L, W), c.q))),
            RewriteRule("S2", (W, LS), poly(((LS, W), c.qbar))),
            RewriteRule("S3", (WS, LS), poly(((LS, WS), c.q))),
            RewriteRule("S4", (WS, L), poly(((L, WS), c.qbar))),
            RewriteRule("S5", (L, LS), poly(((), 1))),
            RewriteRule("S6", (LS, L), poly(((), 1))),
            RewriteRule("S7", (W, WS), poly(((L,), c.z), ((LS,), c.zbar), ((), c.mu))),
            RewriteRule("S8", (WS, W), poly(((L,), -c.zbar), ((LS,), -c.z), ((), c.mu))),
        )
        return cls(rules, params, domain, step_cap)

    @property
    def constants(self):
        return self._constants

    @property
    def is_exact(self) -> bool:
        return isinstance(self.domain, ExactDomain)

    def rule(self, name: str) -> RewriteRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_rule(self, name: str, rhs: NCPolynomial) -> ReductionSystem:
        """Copy of the system with one right-hand side replaced."""
        rules = tuple(replace(r, rhs=rhs) if r.name == name else r for r in self.rules)
        return ReductionSystem(rules, self.params, self.domain, self.step_cap, self.name + "*")

    def relations(self):
        return {r.name: r.relation() for r in self.rules}

    def first_redex(self, word: Word):
        for pos, letter in enumerate(word):
            for rule in self._by_first.get(letter, ()):
                n = len(rule.lhs)
                if word[pos:pos + n] == rule.lhs:
                    return pos, rule
        return None, None

    def is_irreducible(self, word: Word) -> bool:
        return self.first_redex(word)[1] is None

    def poly(self, terms) -> NCPolynomial:
        return NCPolynomial(terms, self.domain)


def normal_form(p: NCPolynomial, sys: ReductionSystem) -> NCPolynomial:
    """Reduce ``p`` until no word contains a left-hand side.

    Raises
    ------
    StepCapExceeded
        After ``sys.step_cap`` single rewrites.
    """
    if p.alphabet is not TORUS and any(p.words()):
        raise AlphabetMismatch("normal forms are only defined over the torus alphabet")
    if p.domain != sys.domain:
        p = p.map_domain(sys.domain)
    done = {}
    stack = list(reversed(list(p.items())))
    steps = 0
    while stack:
        word, c = stack.pop()
        pos, rule = sys.first_redex(word)
        if rule is None:
            done[word] = done[word] + c if word in done else c
            continue
        steps += 1
        if steps > sys.step_cap:
            raise StepCapExceeded(f"more than {sys.step_cap} rewrite steps")
        head, tail = word[:pos], word[pos + len(rule.lhs):]
        for w, a in reversed(list(rule.rhs.items())):
            stack.append((head + w + tail, c * a))
    return NCPolynomial(done, sys.domain)


def enumerate_ambiguities(sys: ReductionSystem):
    """All overlap and inclusion ambiguities of the system.

    An overlap pairs rule A = xy with rule B = yz (x, y, z nonempty) on the
    word xyz; an inclusion has B's left-hand side inside A's.
    """
    found = []
    for a in sys.rules:
        for b in sys.rules:
            la, lb = len(a.lhs), len(b.lhs)
            for k in range(1, min(la, lb)):
                if a.lhs[la - k:] == b.lhs[:k]:
                    word = a.lhs + b.lhs[k:]
                    found.append(_make_ambiguity(sys, a, b, word, la - k, "overlap"))
            if a is not b and lb <= la:
                for pos in range(la - lb + 1):
                    if a.lhs[pos:pos + lb] == b.lhs:
                        found.append(_make_ambiguity(sys, a, b, a.lhs, pos, "inclusion"))
    return found


def _make_ambiguity(sys, a, b, word, pos, kind):
    tail_a = NCPolynomial.monomial(word[len(a.lhs):], sys.domain)
    head_b = NCPolynomial.monomial(word[:pos], sys.domain)
    tail_b = NCPolynomial.monomial(word[pos + len(b.lhs):], sys.domain)
    return Ambiguity(
        left=a,
        right=b,
        overlap=word,
        right_position=pos,
        left_reduct=a.rhs * tail_a,
        right_reduct=head_b * b.rhs * tail_b,
        kind=kind,
    )


def resolve(amb: Ambiguity, sys: ReductionSystem):
    """Normal forms of both one-step reducts and their difference."""
    left = normal_form(amb.left_reduct, sys)
    right = normal_form(amb.right_reduct, sys)
    return left, right, left - right


def check_confluence(sys: ReductionSystem, strict: bool = True):
    """Resolve every ambiguity and report.

    With an exact domain a passing report is a certificate; with floats it
    is numerical evidence only and is labelled as such.

    Raises
    ------
    NotConfluent
        On the first unresolved ambiguity when ``strict`` is true.
    """
    from .syntax import format_polynomial

    rows = []
    ok = True
    for amb in enumerate_ambiguities(sys):
        left, right, diff = resolve(amb, sys)
        passed = diff.is_zero()
        if not passed and strict:
            raise NotConfluent(amb, format_polynomial(diff, sys.params))
        ok = ok and passed
        row = {
            "overlap": amb.overlap_text(),
            "ruleA": amb.left.name,
            "ruleB": amb.right.name,
            "kind": amb.kind,
            "resolved": format_polynomial(left, sys.params),
            "pass": passed,
        }
        if not passed:
            row["difference"] = format_polynomial(diff, sys.params)
        rows.append(row)
    return {
        "system": sys.name,
        "params": sys.params.as_dict(),
        "backend": sys.domain.name,
        "mode": "certificate" if sys.is_exact else "evidence, not proof",
        "count": len(rows),
        "ambiguities": rows,
        "pass": ok,
    }
