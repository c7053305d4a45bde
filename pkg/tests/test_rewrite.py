import pytest
from hypothesis import given, settings

from ncdeform.errors import AlphabetMismatch, IncompatibleRule, NotConfluent, StepCapExceeded
from ncdeform.params import derive_params
from ncdeform.polynomial import NCPolynomial
from ncdeform.rewrite import (
    Order,
    ReductionSystem,
    RewriteRule,
    check_confluence,
    enumerate_ambiguities,
    normal_form,
    order_compare,
)
from ncdeform.words import SURFACE, L, LS, W, WS

from .strategies import EXACT, polynomials

SYS = ReductionSystem.torus(derive_params(2, "1/5"), backend="exact")


def mono(*word):
    return NCPolynomial.monomial(word, EXACT)


def test_order():
    assert order_compare((L,), (W, L)) is Order.LESS
    assert order_compare((L, W), (W, L)) is Order.LESS
    assert order_compare((W, L), (L, W)) is Order.GREATER
    assert order_compare((W, WS), (L, LS)) is Order.INCOMPARABLE
    assert order_compare((W,), (W,)) is Order.EQUAL


def test_incompatible_rule_rejected():
    with pytest.raises(IncompatibleRule):
        RewriteRule("bad", (L, W), mono(W, L))
    with pytest.raises(IncompatibleRule):
        RewriteRule("grow", (W, L), mono(L, W, W))


def test_single_rules():
    c = SYS.constants
    assert normal_form(mono(W, L), SYS) == mono(L, W) * c.q
    assert normal_form(mono(L, LS), SYS) == NCPolynomial.constant(1, EXACT)
    assert normal_form(mono(WS, W), SYS) == NCPolynomial({(L,): -c.zbar, (LS,): -c.z, (): c.mu}, EXACT)


def test_surface_polynomials_are_rejected():
    with pytest.raises(AlphabetMismatch):
        normal_form(NCPolynomial.monomial((0, 1), EXACT, SURFACE), SYS)


def test_step_cap():
    capped = ReductionSystem.torus(derive_params(2, "1/5"), backend="exact", step_cap=3)
    with pytest.raises(StepCapExceeded):
        normal_form(mono(W, W, W, WS, WS, WS), capped)


@given(polynomials())
@settings(max_examples=40, deadline=None)
def test_normal_form_is_irreducible_and_idempotent(p):
    nf = normal_form(p, SYS)
    assert all(SYS.is_irreducible(w) for w in nf.words())
    assert normal_form(nf, SYS) == nf


@given(polynomials(max_terms=3, max_word=3), polynomials(max_terms=3, max_word=3))
@settings(max_examples=30, deadline=None)
def test_normal_form_respects_the_quotient(a, b):
    assert normal_form(a + b, SYS) == normal_form(a, SYS) + normal_form(b, SYS)
    assert normal_form(normal_form(a, SYS) * normal_form(b, SYS), SYS) == normal_form(a * b, SYS)


def test_ambiguities_are_overlaps_only():
    ambs = enumerate_ambiguities(SYS)
    assert len(ambs) == 12
    assert {a.kind for a in ambs} == {"overlap"}
    assert {a.overlap_text() for a in ambs} >= {"W W* L", "W W* W", "L L* L"}


def test_inclusion_is_detected():
    c = SYS.constants
    extra = RewriteRule("X", (W, WS, L), NCPolynomial({(L, L): c.z}, EXACT))
    sys_ = ReductionSystem(SYS.rules + (extra,), SYS.params, SYS.domain)
    inclusions = [a for a in enumerate_ambiguities(sys_) if a.kind == "inclusion"]
    # W W* L contains both W W* and W* L
    assert sorted(a.right.name for a in inclusions) == ["S4", "S7"]


def test_confluence_modes():
    assert check_confluence(SYS)["mode"] == "certificate"
    fl = ReductionSystem.torus(derive_params(2, 0.2), backend="float")
    report = check_confluence(fl)
    assert report["pass"] and report["mode"] == "evidence, not proof"


def test_fault_injection_breaks_confluence():
    broken = SYS.with_rule("S7", SYS.rule("S7").rhs + NCPolynomial.constant(1, EXACT))
    with pytest.raises(NotConfluent) as err:
        check_confluence(broken)
    assert "W" in str(err.value)
    report = check_confluence(broken, strict=False)
    assert not report["pass"]
    failing = [row for row in report["ambiguities"] if not row["pass"]]
    assert failing and all("difference" in row for row in failing)


@pytest.mark.parametrize("theta", ["1/3", "2/7", "3/8", "1/12"])
def test_confluence_at_other_points(theta):
    assert check_confluence(ReductionSystem.torus(derive_params(5, theta), backend="exact"))["pass"]
