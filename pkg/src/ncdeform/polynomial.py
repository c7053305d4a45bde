"""Noncommutative polynomials over a pluggable coefficient domain."""

from __future__ import annotations

from .errors import DomainMismatch
from .words import TORUS, Alphabet, Word, word_key


class NCPolynomial:
    """Finite linear combination of words.

    Instances are immutable.  Zero coefficients (in the sense of the
    domain, so within tolerance for floats) are never stored.
    """

    __slots__ = ("alphabet", "domain", "_terms")
    __hash__ = None

    def __init__(self, terms, domain, alphabet: Alphabet = TORUS):
        self.alphabet = alphabet
        self.domain = domain
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, c in items:
            word = tuple(word)
            c = domain.coerce(c)
            acc[word] = acc[word] + c if word in acc else c
        self._terms = {w: acc[w] for w in sorted(acc, key=word_key) if not domain.is_zero(acc[w])}

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, domain, alphabet=TORUS):
        return cls({}, domain, alphabet)

    @classmethod
    def constant(cls, c, domain, alphabet=TORUS):
        return cls({(): c}, domain, alphabet)

    @classmethod
    def monomial(cls, word, domain, alphabet=TORUS, coeff=1):
        return cls({tuple(word): coeff}, domain, alphabet)

    @classmethod
    def _raw(cls, terms, domain, alphabet):
        # terms already canonical: sorted, nonzero, coerced
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.domain = domain
        obj._terms = terms
        return obj

    # -- access --------------------------------------------------------
    def items(self):
        """(word, coefficient) pairs in increasing word order."""
        return self._terms.items()

    def words(self):
        return list(self._terms)

    def coefficient(self, word: Word):
        return self._terms.get(tuple(word), self.domain.zero)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def leading_word(self) -> Word | None:
        return next(reversed(self._terms), None)

    # -- algebra -------------------------------------------------------
    def _check(self, other):
        if self.domain != other.domain:
            raise DomainMismatch(f"{self.domain!r} vs {other.domain!r}")
        if self.alphabet != other.alphabet and self._has_letters() and other._has_letters():
            raise DomainMismatch(f"alphabet {self.alphabet.name} vs {other.alphabet.name}")

    def _promote(self, other):
        if isinstance(other, NCPolynomial):
            self._check(other)
            return other
        try:
            return NCPolynomial.constant(other, self.domain, self.alphabet)
        except TypeError:
            return NotImplemented

    def _has_letters(self):
        return any(self._terms)

    def _alphabet_with(self, other):
        return other.alphabet if other._has_letters() and not self._has_letters() else self.alphabet

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return NCPolynomial(list(self._terms.items()) + list(other._terms.items()),
                            self.domain, self._alphabet_with(other))

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw({w: -c for w, c in self._terms.items()}, self.domain, self.alphabet)

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self.domain.coerce(c)
        return NCPolynomial([(w, a * c) for w, a in self._terms.items()], self.domain, self.alphabet)

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        prod = [(u + v, a * b) for u, a in self._terms.items() for v, b in other._terms.items()]
        return NCPolynomial(prod, self.domain, self._alphabet_with(other))

    def __rmul__(self, other):
        try:
            c = self.domain.coerce(other)
        except TypeError:
            return NotImplemented
        return NCPolynomial([(w, c * a) for w, a in self._terms.items()], self.domain, self.alphabet)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = NCPolynomial.constant(1, self.domain, self.alphabet)
        for _ in range(k):
            result = result * self
        return result

    def adjoint(self) -> NCPolynomial:
        """Conjugate coefficients, reverse and star every word."""
        conj = self.domain.conj
        return NCPolynomial(
            [(self.alphabet.adjoint(w), conj(c)) for w, c in self._terms.items()],
            self.domain,
            self.alphabet,
        )

    def map_domain(self, domain) -> NCPolynomial:
        """Re-express the coefficients in another domain (e.g. exact -> float)."""
        return NCPolynomial(self._terms.items(), domain, self.alphabet)

    def __eq__(self, other):
        if isinstance(other, NCPolynomial):
            if self.domain != other.domain:
                return False
        else:
            other = self._promote(other)
            if other is NotImplemented:
                return other
        return (self - other).is_zero()

    def __repr__(self):
        if not self._terms:
            return "NCPolynomial(0)"
        body = " + ".join(f"({complex(c):.6g})*{self.alphabet.spell(w)}" for w, c in self._terms.items())
        return f"NCPolynomial({body})"


def poly_mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b


def poly_adjoint(a: NCPolynomial) -> NCPolynomial:
    return a.adjoint()


def generators(domain, alphabet=TORUS):
    """Dict letter-name -> degree-one monomial."""
    return {
        name: NCPolynomial.monomial((k,), domain, alphabet)
        for k, name in enumerate(alphabet.letters)
    }


def random_polynomial(rng, domain, max_degree=6, terms=6, alphabet=TORUS):
    """Random polynomial for property checks.

    ``rng`` is a numpy Generator.  Float domains get complex normal
    coefficients; exact domains get small integers.
    """
    acc = {}
    n = len(alphabet.letters)
    for _ in range(terms):
        length = int(rng.integers(0, max_degree + 1))
        word = tuple(int(a) for a in rng.integers(0, n, size=length))
        if domain.name == "exact":
            c = int(rng.integers(-3, 4))
        else:
            c = complex(rng.normal(), rng.normal())
        acc[word] = c
    return NCPolynomial(acc, domain, alphabet)
