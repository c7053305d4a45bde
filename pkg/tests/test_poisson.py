from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdeform.poisson import CommutativePoly3, mu, poisson_bracket, torus_sphere_polynomial, x, y, z


def test_level_set_polynomial():
    C = torus_sphere_polynomial()
    assert C.diff("z") == z
    assert C.diff("x") == 2 * x * (x**2 + y**2 - mu)
    with pytest.raises(ValueError):
        C.diff("mu")


def test_printing():
    assert str(x * y - 2 * z + Fraction(1, 2)) == "x*y - 2*z + 1/2"
    assert str(CommutativePoly3()) == "0"


monomials = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
polys = st.dictionaries(monomials, st.integers(-3, 3), max_size=4).map(CommutativePoly3)


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_antisymmetry(f, g):
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)


@given(polys, polys, polys)
@settings(max_examples=25, deadline=None)
def test_leibniz(f, g, h):
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


@given(polys, polys, polys)
@settings(max_examples=15, deadline=None)
def test_jacobi(f, g, h):
    cyc = (
        poisson_bracket(f, poisson_bracket(g, h))
        + poisson_bracket(g, poisson_bracket(h, f))
        + poisson_bracket(h, poisson_bracket(f, g))
    )
    assert cyc == 0


@given(polys)
@settings(max_examples=25, deadline=None)
def test_casimir_is_central(f):
    assert poisson_bracket(torus_sphere_polynomial(), f) == 0
