"""Acceptance gate: one test group per criterion, summarised at the end of the run."""

import math
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from ncdeform import bridge, projective, reps
from ncdeform.basis import casimir_expression, casimir_reduce, cocycle_check, product_law_check
from ncdeform.params import derive_params
from ncdeform.poisson import mu, poisson_bracket, torus_sphere_polynomial, x, y, z
from ncdeform.polynomial import NCPolynomial
from ncdeform.rewrite import ReductionSystem, check_confluence, normal_form
from ncdeform.words import L, LS, W, WS

TORUS_REPS = [(5, 1, 2), (8, 3, 4), (11, 1, 2)]
CASIMIR_POINTS = [(2, "1/5"), (3, "1/3"), (4, "3/8"), ("3/2", "1/7"), (5, "2/5")]


def brute_force_overlaps(rules):
    """Count ways two left-hand sides overlap, by scanning all short words."""
    lhs = [r.lhs for r in rules]
    longest = max(len(w) for w in lhs)
    count = 0
    for length in range(2, 2 * longest):
        for word in product(range(4), repeat=length):
            hits = [(i, w) for w in lhs for i in range(length - len(w) + 1) if word[i:i + len(w)] == w]
            for (i, a), (j, b) in product(hits, repeat=2):
                # a starts first, b starts strictly inside a and ends strictly after it,
                # and together they cover the whole word
                if i == 0 and 0 < j < len(a) < j + len(b) == length:
                    count += 1
    return count


@pytest.mark.criterion(1, "confluence certificate, exact backend")
@pytest.mark.parametrize("mu_, theta", [(2, "1/5"), (3, "1/3")])
def test_confluence_certificate(mu_, theta):
    start = time.perf_counter()
    sys_ = ReductionSystem.torus(derive_params(mu_, theta), backend="exact")
    report = check_confluence(sys_)
    elapsed = time.perf_counter() - start
    assert report["pass"] and report["mode"] == "certificate"
    assert all(row["pass"] for row in report["ambiguities"])
    assert report["count"] == brute_force_overlaps(sys_.rules) == 12
    assert elapsed < 1.0


@pytest.mark.criterion(2, "normal form of W W* L")
def test_normal_form_anchor(exact_sys):
    d, c = exact_sys.domain, exact_sys.constants
    got = normal_form(NCPolynomial.monomial((W, WS, L), d), exact_sys)
    want = NCPolynomial({(L, L): c.z, (L,): c.mu, (): c.zbar}, d)
    assert got == want
    assert got.coefficient((L, L)) == c.z


@pytest.mark.criterion(3, "basis product law and phase cocycle")
def test_basis_law(exact_sys):
    law = product_law_check(exact_sys, 3)
    assert law["pass"] and law["max_discrepancy"] == 0.0
    assert law["pairs"] == 28 ** 2 + 21 ** 2
    coc = cocycle_check(exact_sys, 3)
    assert coc["pass"] and coc["triples"] == 2 * 49 ** 3


@pytest.mark.criterion(4, "Casimir reduces to 1; the hbar^4 variant does not")
@pytest.mark.parametrize("mu_, theta", CASIMIR_POINTS)
def test_casimir_identity(mu_, theta):
    params = derive_params(mu_, theta)
    assert params.admissible
    sys_ = ReductionSystem.torus(params, backend="exact")
    one = NCPolynomial.constant(1, sys_.domain)
    assert casimir_reduce(sys_) == one
    assert casimir_reduce(sys_, printed=True) != one


@pytest.mark.criterion(5, "torus representation residuals")
@pytest.mark.parametrize("N, p, mu_", TORUS_REPS)
def test_representation_residuals(N, p, mu_):
    start = time.perf_counter()
    rep = reps.torus_rep(N, p, mu_)
    report = reps.relation_residuals(rep, tol=1e-12)
    assert report.passed, report.residuals
    assert len(report.residuals) == 11
    sys_ = ReductionSystem.torus(derive_params(mu_, Fraction(p, N)), backend="float")
    C = reps.evaluate(casimir_expression(sys_), rep)
    assert reps.opnorm(C - np.eye(N)) < 1e-12
    assert reps.casimir_residual(rep) < 1e-12
    assert reps.lambda_reconstruct(rep)[1] < 1e-12
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(6, "evaluate(NF(p)) == evaluate(p) on random polynomials")
@pytest.mark.parametrize("N, p, mu_", TORUS_REPS)
def test_symbolic_numeric_consistency(N, p, mu_):
    assert reps.nf_consistency(reps.torus_rep(N, p, mu_), count=100, max_degree=6, seed=N) < 1e-10


@pytest.mark.criterion(7, "embedding into the noncommutative torus")
def test_bridge():
    params = derive_params(2, "1/5")
    pair = bridge.clock_shift(5, 1)
    assert bridge.phi_relation_residuals(pair, params, 1e-12)["pass"]
    assert bridge.intertwine_residual(pair, params) < 1e-12
    assert bridge.intertwine_check(pair, params)["pass"]
    assert bridge.phi_inverse_roundtrip(pair, params, 1e-10)["pass"]
    for mu_, theta, N in [(2, "1/5", 5), (3, "1/3", 3)]:
        pp = derive_params(mu_, theta)
        rep = bridge.spectral_check(pp, N, 1, phases=64)
        assert rep["min_eigenvalue"] >= pp.mu - 1 / abs(pp.cos_pi_theta) - 1e-12
    p11 = derive_params(2, "1/11")
    ind = bridge.independence_evidence(p11, bridge.clock_shift(11, 1))
    assert ind["indices"] == 15 and ind["residual_or_bound"] > 1e-8


@pytest.mark.criterion(8, "scaling limits")
def test_scaling_limits():
    tor = reps.scaling_torus(5, 1, [1e-1, 1e-2, 1e-3])
    assert all(row["within_bound"] for row in tor.summary)
    assert 1.9 <= tor.order <= 2.1
    assert tor.extra["lambda_drift"] == 0.0
    sph = reps.scaling_sphere(6, 0.3, [1e-1, 1e-2, 1e-3])
    assert 1.9 <= sph.order <= 2.1
    assert sph.summary[1]["max_rel_err"] < 1e-2


@pytest.mark.criterion(9, "projective module: relations, Leibniz, curvature")
def test_module():
    params = derive_params(2, "1/5")
    samples = projective.sample_points(2, 200, seed=0)
    mp = projective.ModuleParams(1, 2, params)
    phi = projective.gaussian(2)
    assert max(projective.relation_residuals(phi, mp, samples).values()) < 1e-12
    table = projective.leibniz_table(phi, mp, samples)
    assert len(table) == 8 and max(table.values()) < 1e-10
    for m, n in [(1, 2), (0, 1), (2, 3)]:
        mpc = projective.ModuleParams(m, n, params)
        res = projective.curvature_check(phi, mpc, projective.sample_points(n, 200, seed=1))
        assert res["max_deviation"] < 1e-12
        assert abs(res["expected"] - 1j / (2 * math.pi * mpc.eps)) < 1e-15
    first = projective.curvature_check(phi, mp, samples)
    assert abs(first["constant"] - 1j / (1.4 * math.pi)) < 1e-12


@pytest.mark.criterion(10, "classical Poisson brackets")
def test_poisson():
    C = torus_sphere_polynomial()
    s = x**2 + y**2 - mu
    assert poisson_bracket(x, y, C) == z
    assert poisson_bracket(y, z, C) == 2 * x * s
    assert poisson_bracket(z, x, C) == 2 * y * s
    for f in (x, y, z):
        assert poisson_bracket(C, f, C) == 0
