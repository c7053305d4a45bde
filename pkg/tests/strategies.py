"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from ncdeform.domains import make_domain
from ncdeform.params import derive_params
from ncdeform.polynomial import NCPolynomial

PARAMS = derive_params(2, "1/5")
EXACT = make_domain(PARAMS, "exact")
FLOAT = make_domain(PARAMS, "float")

words = st.lists(st.integers(0, 3), max_size=5).map(tuple)


def polynomials(domain=EXACT, max_terms=5, max_word=5):
    w = st.lists(st.integers(0, 3), max_size=max_word).map(tuple)
    if domain is EXACT:
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    else:
        coeff = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
    return st.lists(st.tuples(w, coeff), max_size=max_terms).map(lambda t: NCPolynomial(t, domain))
