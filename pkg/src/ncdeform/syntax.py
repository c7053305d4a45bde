"""Text syntax for algebra elements: parser and canonical printer.

Grammar (whitespace is insignificant except before an adjoint star)::

    expr     := ['+' | '-'] term (('+' | '-') term)*
    term     := factor (['*'] factor)*
    factor   := atom ['^' exponent]
    atom     := number ['/' number] | constant | generator | 'I' | '(' expr ')'
    exponent := ['-'] int | '(' ['-'] int ['/' int] ')'

Generators are ``W W* L L* X Y Z``; constants are ``q z zbar mu hbar i``.
A ``*`` written directly after a generator letter (no space) is the
adjoint, so ``W*W`` is the word W* W while ``W * W`` is W^2.  Negative
powers are allowed on ``L`` only (``L^-2`` is ``L*^2``); half-integer
powers on ``q`` only, with ``q^(1/2) = exp(i pi theta)``.  Decimal
literals are accepted in addition to integers and ``p/q`` rationals so
that float coefficients round-trip.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyc
from .domains import ExactDomain, constants_for, make_domain
from .errors import DomainMismatch, ParseError
from .polynomial import NCPolynomial
from .words import SURFACE, TORUS

_NAMES = ("zbar", "hbar", "mu", "W", "L", "X", "Y", "Z", "I", "q", "z", "i")
_GENERATORS = {"W": (TORUS, 2), "L": (TORUS, 0), "X": (SURFACE, 0), "Y": (SURFACE, 1), "Z": (SURFACE, 2)}
_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_ATOM_START = frozenset({"number", "constant", "generator", "I", "("})


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _NUMBER.match(text, pos)
        if m:
            tokens.append(("number", m.group(0), pos))
            pos = m.end()
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        for name in _NAMES:
            if text.startswith(name, pos):
                start = pos
                pos += len(name)
                if name in _GENERATORS:
                    starred = pos < n and text[pos] == "*"
                    if starred:
                        pos += 1
                    tokens.append(("generator", (name, starred), start))
                elif name == "I":
                    tokens.append(("I", name, start))
                else:
                    tokens.append(("constant", name, start))
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", pos, _ATOM_START | {"+", "-", "*", "^", ")"})
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, consts, domain):
        self.tokens = _tokenize(text)
        self.i = 0
        self.consts = consts
        self.domain = domain

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, kind):
        t = self.tok
        if t[0] != kind:
            raise ParseError(f"unexpected {t[0]} token", t[2], {kind})
        self.i += 1
        return t

    def parse(self):
        p = self.expr()
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[0]} token", self.tok[2], {"+", "-", "end"} | _ATOM_START)
        return p

    def expr(self):
        sign = 1
        if self.tok[0] in "+-":
            sign = -1 if self.take(self.tok[0])[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.tok[0] in ("+", "-"):
            op, _, pos = self.take(self.tok[0])
            rhs = self.term()
            acc = self.combine(acc, rhs if op == "+" else -rhs, pos, "add")
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.tok[0]
            if kind == "*":
                pos = self.take("*")[2]
                if self.tok[0] not in _ATOM_START:
                    raise ParseError("dangling '*'", self.tok[2], _ATOM_START)
            elif kind in _ATOM_START:
                pos = self.tok[2]
            else:
                return acc
            acc = self.combine(acc, self.factor(), pos, "mul")

    def combine(self, a, b, pos, op):
        try:
            return a + b if op == "add" else a * b
        except DomainMismatch:
            raise ParseError("generators from different alphabets", pos, ()) from None

    def exponent(self):
        t = self.tok
        if t[0] == "(":
            self.take("(")
            sign = -1 if self.tok[0] == "-" and self.take("-") else 1
            num = self.integer()
            den = 1
            if self.tok[0] == "/":
                self.take("/")
                den = self.integer()
            self.take(")")
            return Fraction(sign * num, den), t[2]
        sign = -1 if self.tok[0] == "-" and self.take("-") else 1
        return Fraction(sign * self.integer()), t[2]

    def integer(self):
        t = self.tok
        if t[0] != "number" or not t[1].isdigit():
            raise ParseError("expected an integer", t[2], {"integer"})
        self.i += 1
        return int(t[1])

    def number(self):
        t = self.take("number")
        if self.tok[0] == "/" and t[1].isdigit():
            self.take("/")
            den = self.integer()
            if den == 0:
                raise ParseError("zero denominator", t[2], ())
            return Fraction(int(t[1]), den)
        if isinstance(self.domain, ExactDomain):
            return Fraction(t[1])
        return float(t[1])

    def factor(self):
        t = self.tok
        kind = t[0]
        d = self.domain
        if kind == "number":
            value = self.number()
            base = ("scalar", d.coerce(value))
        elif kind == "constant":
            self.i += 1
            base = ("constant", t[1])
        elif kind == "generator":
            self.i += 1
            base = ("generator", t[1])
        elif kind == "I":
            self.i += 1
            base = ("poly", NCPolynomial.constant(1, d))
        elif kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            base = ("poly", inner)
        else:
            raise ParseError(f"unexpected {kind} token", t[2], _ATOM_START)

        power, ppos = Fraction(1), None
        if self.tok[0] == "^":
            self.take("^")
            power, ppos = self.exponent()
        return self.realize(base, power, ppos if ppos is not None else t[2])

    def realize(self, base, power, pos):
        kind, value = base
        d = self.domain
        if kind == "constant":
            if power < 0:
                raise ParseError("negative powers of constants are not allowed", pos, ())
            if value == "q" and (2 * power).denominator == 1:
                c = self.consts.qhalf_pow(int(2 * power))
            elif power.denominator != 1:
                raise ParseError("half-integer powers are only defined for q", pos, ())
            else:
                c = self.consts.named()[value] ** int(power)
            return NCPolynomial.constant(c, d)
        if power.denominator != 1:
            raise ParseError("non-integer power", pos, ())
        k = int(power)
        if kind == "generator":
            name, starred = value
            alphabet, letter = _GENERATORS[name]
            if starred:
                letter = alphabet.star[letter]
            if k < 0:
                if name != "L" or starred:
                    raise ParseError("negative powers are only allowed on L", pos, ())
                letter, k = alphabet.star[letter], -k
            return NCPolynomial.monomial((letter,) * k, d, alphabet)
        if k < 0:
            raise ParseError("negative power", pos, ())
        if kind == "scalar":
            return NCPolynomial.constant(value**k, d)
        return value**k


def parse_expression(text: str, params, domain=None) -> NCPolynomial:
    """Parse ``text`` into a polynomial.

    ``domain`` defaults to the exact backend when both parameters are
    rational and to floats otherwise.
    """
    if domain is None:
        domain = make_domain(params)
    return _Parser(text, constants_for(params, domain), domain).parse()


# -- printing ----------------------------------------------------------

def _exact_expansion(c: Cyc, consts):
    """Spell an exact coefficient as a sum of rational * i^a * q^(b/2)."""
    field = c.field
    M = field.order
    step = consts._qhalf_step
    quarter = M // 4
    span = M // gcd(step, M)
    spelled = {}
    for b in range(span):
        for a in range(4):
            e = (a * quarter + b * step) % M
            spelled.setdefault(e, (a, b))
    pieces = []
    for k, n in enumerate(c.num):
        if not n:
            continue
        a, b = spelled[k]
        r = Fraction(n, c.den) * (-1 if a >= 2 else 1)
        mono = []
        if a % 2:
            mono.append("i")
        if b:
            mono.append(_qpow(b))
        pieces.append((r, "*".join(mono)))
    out = []
    for r, mono in pieces:
        mag = abs(r)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else f"{mag}")
        if not out:
            out.append(("-" if r < 0 else "") + body)
        else:
            out.append((" - " if r < 0 else " + ") + body)
    return "(" + "".join(out) + ")"


def _qpow(b):
    if b % 2:
        return f"q^({b}/2)"
    return "q" if b == 2 else f"q^{b // 2}"


def _format_float(c: complex):
    re_, im = c.real, c.imag
    if im == 0:
        return ("-" if re_ < 0 else "+"), repr(abs(re_))
    if re_ == 0:
        return ("-" if im < 0 else "+"), f"({abs(im)!r}*i)"
    op = "-" if im < 0 else "+"
    return "+", f"({re_!r} {op} {abs(im)!r}*i)"


def format_coefficient(c, consts):
    """Return ``(sign, body)`` for a coefficient; empty body means magnitude one."""
    d = consts.domain
    if d.is_zero(c - d.one):
        return "+", ""
    if d.is_zero(c + d.one):
        return "-", ""
    for name, v in consts.named().items():
        if d.is_zero(c - v):
            return "+", name
        if d.is_zero(c + v):
            return "-", name
    if isinstance(d, ExactDomain):
        if c.is_rational():
            fr = c.as_fraction()
            return ("-" if fr < 0 else "+"), str(abs(fr))
        return "+", _exact_expansion(c, consts)
    return _format_float(complex(c))


def format_polynomial(p: NCPolynomial, params) -> str:
    """Canonical text, leading (largest) word first; parses back to ``p``."""
    if p.is_zero():
        return "0"
    consts = constants_for(params, p.domain)
    parts = []
    for word, c in reversed(list(p.items())):
        sign, body = format_coefficient(c, consts)
        spelled = p.alphabet.spell(word)
        if word:
            text = f"{body}*{spelled}" if body else spelled
        else:
            text = f"{body}*I" if body else "I"
        if not parts:
            parts.append(("-" if sign == "-" else "") + text)
        else:
            parts.append((" - " if sign == "-" else " + ") + text)
    return "".join(parts)
