import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdeform.basis import (
    BasisVector,
    S,
    T,
    basis_element,
    basis_product,
    casimir_reduce,
    classify_word,
    from_basis,
    lambda_reconstruction,
    product_law_check,
    to_basis,
)
from ncdeform.errors import NotClosed
from ncdeform.params import derive_params
from ncdeform.polynomial import NCPolynomial
from ncdeform.rewrite import ReductionSystem, normal_form
from ncdeform.words import L, LS, W, WS

from .strategies import EXACT, polynomials

SYS = ReductionSystem.torus(derive_params(2, "1/5"), backend="exact")
C = SYS.constants


def test_index_validation():
    with pytest.raises(ValueError):
        T(0, -1)
    with pytest.raises(ValueError):
        S(0, 0)


def test_classify_word():
    assert classify_word((L, L, W)) == T(2, 1)
    assert classify_word((LS, WS, WS)) == S(-1, 2)
    assert classify_word(()) == T(0, 0)
    assert classify_word((W, L)) is None


def test_examples():
    assert to_basis(NCPolynomial.monomial((L, W), EXACT), SYS) == BasisVector({T(1, 1): C.qhalf_pow(-1)}, EXACT)
    ww = to_basis(NCPolynomial.monomial((W, WS), EXACT), SYS)
    assert ww == BasisVector({T(1, 0): C.z, T(-1, 0): C.zbar, T(0, 0): C.mu}, EXACT)


def test_mixed_families_do_not_close():
    with pytest.raises(NotClosed):
        basis_product(T(1, 1), S(0, 1), SYS)
    with pytest.raises(NotClosed):
        basis_product(S(0, 1), T(1, 0), SYS)


def test_product_law_float_backend():
    fl = ReductionSystem.torus(derive_params(2, 0.2), backend="float")
    report = product_law_check(fl, 2)
    assert report["pass"] and report["max_discrepancy"] < 1e-12


@pytest.mark.parametrize("m1, m2", [(m1, m2) for m1 in range(-3, 4) for m2 in range(1, 4)])
def test_adjoint_exchanges_families(m1, m2):
    star = basis_element(T(m1, m2), SYS).adjoint()
    assert to_basis(star, SYS) == BasisVector({S(-m1, m2): 1}, EXACT)


def test_l_powers_are_self_adjoint_family():
    assert to_basis(basis_element(T(2, 0), SYS).adjoint(), SYS) == BasisVector({T(-2, 0): 1}, EXACT)


indices = st.one_of(
    st.builds(T, st.integers(-3, 3), st.integers(0, 3)),
    st.builds(S, st.integers(-3, 3), st.integers(1, 3)),
)


@given(indices, indices)
def test_distinct_indices_have_distinct_words(a, b):
    if a != b:
        assert a.word() != b.word()


@given(polynomials())
@settings(max_examples=40, deadline=None)
def test_basis_coordinates_round_trip(p):
    assert from_basis(to_basis(p, SYS), SYS) == normal_form(p, SYS)


def test_lambda_reconstruction():
    assert normal_form(lambda_reconstruction(SYS), SYS) == NCPolynomial.monomial((L,), EXACT)


def test_printed_casimir_leaves_a_remainder():
    rest = casimir_reduce(SYS, printed=True) - NCPolynomial.constant(1, EXACT)
    assert not rest.is_zero()
    # the remainder lives in the span of W W* type words, i.e. L and L* powers
    assert all(set(w) <= {L, LS} for w in rest.words())


def test_casimir_needs_hbar():
    s0 = ReductionSystem.torus(derive_params(2, 0), backend="float")
    with pytest.raises(ZeroDivisionError):
        casimir_reduce(s0)
