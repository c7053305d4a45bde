import pytest
from hypothesis import given, settings

from ncdeform.errors import AlphabetMismatch
from ncdeform.polynomial import NCPolynomial, generators
from ncdeform.words import SURFACE, TORUS, L, LS, W, WS

from .strategies import EXACT, polynomials


def test_canonical_form_drops_zeros_and_sorts():
    p = NCPolynomial([((W, L), 2), ((L,), 1), ((W, L), -2), ((), 3)], EXACT)
    assert p.words() == [(), (L,)]
    assert p.degree() == 1


def test_spelling():
    assert TORUS.spell((L, L, WS, WS, WS)) == "L^2 W*^3"
    assert TORUS.spell(()) == "I"
    assert TORUS.adjoint((L, W, WS)) == (W, WS, LS)


def test_alphabets_do_not_mix():
    g = generators(EXACT)
    x = NCPolynomial.monomial((0,), EXACT, SURFACE)
    with pytest.raises(AlphabetMismatch):
        g["W"] * x
    # constants are alphabet-neutral
    assert (NCPolynomial.constant(2, EXACT) * x).alphabet is SURFACE


@given(polynomials())
@settings(max_examples=50, deadline=None)
def test_adjoint_is_an_involution(p):
    assert p.adjoint().adjoint() == p


@given(polynomials(max_terms=3, max_word=3), polynomials(max_terms=3, max_word=3))
@settings(max_examples=50, deadline=None)
def test_adjoint_reverses_products(a, b):
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()


@given(polynomials(max_terms=3), polynomials(max_terms=3), polynomials(max_terms=3))
@settings(max_examples=30, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == NCPolynomial.zero(EXACT)
