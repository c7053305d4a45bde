import pytest
from hypothesis import given, settings

from ncdeform.errors import ParseError
from ncdeform.polynomial import NCPolynomial
from ncdeform.syntax import format_polynomial, parse_expression
from ncdeform.words import SURFACE, L, LS, W, WS

from .strategies import EXACT, FLOAT, PARAMS, polynomials


def parse(text, domain=EXACT):
    return parse_expression(text, PARAMS, domain)


def test_star_after_generator_is_adjoint():
    assert parse("W*W") == NCPolynomial.monomial((WS, W), EXACT)
    assert parse("W * W") == NCPolynomial.monomial((W, W), EXACT)
    assert parse("L^-2") == NCPolynomial.monomial((LS, LS), EXACT)


def test_constants_and_half_powers():
    c = parse("q^(1/2) * q^(1/2) - q")
    assert c.is_zero()
    assert parse("z + zbar - hbar").is_zero()
    assert parse("i*i + 1").is_zero()
    assert parse("(mu - 2) W").is_zero()


def test_surface_alphabet():
    p = parse("X Y - Y X")
    assert p.alphabet is SURFACE and len(p.words()) == 2


@pytest.mark.parametrize(
    "text, position",
    [("W +", 3), ("W ^ x", 4), ("(W", 2), ("W $", 2), ("W^(1/2)", 2), ("X W", 2)],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == position


def test_negative_power_only_on_l():
    with pytest.raises(ParseError):
        parse("W^-1")


def test_printer_uses_names():
    p = parse("z L^2 + mu L + zbar")
    assert format_polynomial(p, PARAMS) == "z*L^2 + mu*L + zbar*I"
    assert format_polynomial(parse("-W*W + 1/3 L*"), PARAMS) == "-W* W + 1/3*L*"


@given(polynomials())
@settings(max_examples=60, deadline=None)
def test_exact_round_trip(p):
    assert parse(format_polynomial(p, PARAMS)) == p


@given(polynomials(FLOAT))
@settings(max_examples=60, deadline=None)
def test_float_round_trip(p):
    back = parse(format_polynomial(p, PARAMS), FLOAT)
    assert back == p


def test_irrational_exact_coefficient_round_trip():
    p = parse("(q + 2*i*q^(3/2)) W L")
    text = format_polynomial(p, PARAMS)
    assert parse(text) == p
