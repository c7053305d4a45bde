"""Finite-dimensional model of the embedding into the noncommutative torus.

For theta = p/N the unitaries U (clock) and V (shift) with VU = qUV act on
C^N.  The map phi(L) = U, phi(W) = sqrt(R) V with
R = mu + z U + zbar U* sends the defining relations to zero, and
phi^-1(V) = R^(-1/2) W recovers the shift inside any torus representation.
Everything here is finite-dimensional evidence: the C*-completion is not
modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import BoxTooLarge, NotPositive, SpectralViolation
from .reps import dag, evaluate_with, opnorm, torus_rep
from .rewrite import ReductionSystem

DEFAULT_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class ClockShiftPair:
    U: np.ndarray
    V: np.ndarray
    N: int
    p: int

    @property
    def q(self) -> complex:
        return np.exp(2j * np.pi * self.p / self.N)


def clock_shift(N: int, p: int) -> ClockShiftPair:
    """U = diag(q^k), k = 0..N-1, and the cyclic shift V[k, k+1] = 1."""
    if N < 2 or gcd(p, N) != 1:
        raise ValueError("need N >= 2 and gcd(p, N) = 1")
    k = np.arange(N)
    U = np.diag(np.exp(2j * np.pi * p * k / N))
    V = np.zeros((N, N), dtype=complex)
    V[k, (k + 1) % N] = 1
    return ClockShiftPair(U, V, N, p)


def _check_theta(pair, params):
    if not math.isclose(params.theta % 1, (pair.p / pair.N) % 1, abs_tol=1e-14):
        raise ValueError(f"theta = {params.theta} does not match p/N = {pair.p}/{pair.N}")


@dataclass(frozen=True, eq=False)
class RElement:
    """mu + z e^(i pi phase) U + zbar e^(-i pi phase) U*."""

    phase: float
    matrix: np.ndarray
    params: object


def r_element(pair: ClockShiftPair, params, phase: float = 0.0, U=None) -> RElement:
    U = pair.U if U is None else U
    w = params.z * np.exp(1j * np.pi * phase)
    M = params.mu * np.eye(U.shape[0]) + w * U + w.conjugate() * dag(U)
    return RElement(phase, M, params)


def hermitian_sqrt(M, floor: float = DEFAULT_FLOOR, inverse: bool = False) -> np.ndarray:
    """Positive square root (or its inverse) of a Hermitian matrix.

    Raises
    ------
    NotPositive
        If the smallest eigenvalue is not above ``floor``.
    """
    M = np.asarray(M, dtype=complex)
    evals, vecs = np.linalg.eigh((M + dag(M)) / 2)
    if evals[0] <= floor:
        raise NotPositive(f"smallest eigenvalue {evals[0]:.3g} is not above {floor:g}")
    s = np.sqrt(evals)
    if inverse:
        s = 1 / s
    return (vecs * s) @ dag(vecs)


def spectral_check(params, N: int, p: int, phases: int = 64):
    """Smallest eigenvalue of R(phase) over a phase grid against the lower bound.

    Raises
    ------
    SpectralViolation
        If any eigenvalue falls below mu - 1/|cos pi theta| - 1e-12.
    """
    params.require_admissible()
    pair = clock_shift(N, p)
    _check_theta(pair, params)
    bound = params.lemma_bound
    worst = math.inf
    for phase in np.linspace(0.0, 2.0, phases, endpoint=False):
        lo = float(np.linalg.eigvalsh(r_element(pair, params, phase).matrix)[0])
        if lo < bound - 1e-12:
            raise SpectralViolation(f"eigenvalue {lo} below {bound} at phase {phase}")
        worst = min(worst, lo)
    return {"check": "spectrum", "N": N, "p": p, "mu": params.mu, "phases": phases,
            "min_eigenvalue": worst, "residual_or_bound": bound, "pass": True}


def phi_generators(pair: ClockShiftPair, params):
    """Images of L, L*, W, W* under phi."""
    params.require_admissible()
    _check_theta(pair, params)
    phi_w = hermitian_sqrt(r_element(pair, params).matrix) @ pair.V
    return [pair.U, dag(pair.U), phi_w, dag(phi_w)]


def phi_map(p, pair: ClockShiftPair, params) -> np.ndarray:
    return evaluate_with(p, phi_generators(pair, params), pair.N)


def phi_relation_residuals(pair: ClockShiftPair, params, tol: float = 1e-12):
    sys = ReductionSystem.torus(params, backend="float")
    mats = phi_generators(pair, params)
    res = {name: opnorm(evaluate_with(rel, mats, pair.N)) for name, rel in sys.relations().items()}
    worst = max(res.values())
    return {"check": "phi_residuals", "N": pair.N, "p": pair.p, "mu": params.mu,
            "residuals": res, "residual_or_bound": worst, "pass": worst < tol}


def intertwine_residual(pair, params, k: int = 0, swap: bool = False) -> float:
    """|| sqrt(R(q^k)) V - V sqrt(R(q^(k-1))) ||; ``swap`` uses q^(k+1) on the right."""
    th = pair.p / pair.N
    left = hermitian_sqrt(r_element(pair, params, 2 * k * th).matrix) @ pair.V
    j = k + 1 if swap else k - 1
    right = pair.V @ hermitian_sqrt(r_element(pair, params, 2 * j * th).matrix)
    return opnorm(left - right)


def intertwine_check(pair: ClockShiftPair, params, tol: float = 1e-12):
    params.require_admissible()
    _check_theta(pair, params)
    shifted = {k: intertwine_residual(pair, params, k) for k in range(-3, 4)}
    periodic = intertwine_residual(pair, params, pair.N)
    worst = max(max(shifted.values()), periodic)
    return {"check": "intertwine", "N": pair.N, "p": pair.p, "mu": params.mu,
            "residual_or_bound": shifted[0], "shifted": shifted, "period_N": periodic,
            "pass": worst < tol}


def phi_inverse_roundtrip(pair: ClockShiftPair, params, tol: float = 1e-10):
    """Both compositions of phi and its inverse on generators.

    phi(phi^-1(V)) = R_U^(-1/2) sqrt(R_U) V is compared with V.  In the other
    direction the torus representation (L, W) gives U' = L and
    V' = R_L^(-1/2) W; V' must be unitary with V'U' = q U'V', and
    sqrt(R_U') V' must give back W.
    """
    params.require_admissible()
    _check_theta(pair, params)
    N = pair.N
    I = np.eye(N)
    R_U = r_element(pair, params).matrix
    v_back = hermitian_sqrt(R_U, inverse=True) @ (hermitian_sqrt(R_U) @ pair.V)

    rep = torus_rep(N, pair.p, params.mu)
    R_L = r_element(pair, params, U=rep.Lam).matrix
    V1 = hermitian_sqrt(R_L, inverse=True) @ rep.W
    U1 = rep.Lam
    W_back = hermitian_sqrt(R_L) @ V1
    res = {
        "phi(phi_inv(V)) - V": opnorm(v_back - pair.V),
        "phi(phi_inv(U)) - U": opnorm(phi_generators(pair, params)[0] - pair.U),
        "phi_inv(V) unitarity": opnorm(dag(V1) @ V1 - I),
        "phi_inv commutation": opnorm(V1 @ U1 - pair.q * U1 @ V1),
        "phi(phi_inv(W)) - W": opnorm(W_back - rep.W),
    }
    worst = max(res.values())
    return {"check": "roundtrip", "N": N, "p": pair.p, "mu": params.mu,
            "residuals": res, "residual_or_bound": worst, "pass": worst < tol}


def default_box():
    return [(m1, m2) for m1 in range(-2, 3) for m2 in range(0, 3)]


def independence_evidence(params, pair: ClockShiftPair, index_box=None):
    """Smallest eigenvalue of the Hilbert-Schmidt Gram matrix of phi(T_m).

    A positive value shows the images are linearly independent in this
    representation; it is evidence at desk scale, not a proof of injectivity.

    Raises
    ------
    BoxTooLarge
        If the box has more than N^2 indices.
    """
    box = default_box() if index_box is None else list(index_box)
    if len(box) > pair.N ** 2:
        raise BoxTooLarge(f"{len(box)} indices exceed dim M_N = {pair.N ** 2}")
    Lm, Ld, Wm, _ = phi_generators(pair, params)
    qh = np.exp(1j * np.pi * pair.p / pair.N)
    images = []
    for m1, m2 in box:
        lam = np.linalg.matrix_power(Lm if m1 >= 0 else Ld, abs(m1))
        images.append(qh ** (m1 * m2) * lam @ np.linalg.matrix_power(Wm, m2))
    flat = np.array([a.ravel() for a in images])
    gram = flat.conj() @ flat.T
    lo = float(np.linalg.eigvalsh(gram)[0])
    return {"check": "independence", "N": pair.N, "p": pair.p, "mu": params.mu,
            "indices": len(box), "residual_or_bound": lo, "pass": lo > 1e-8,
            "label": "finite-dimensional evidence"}


def phi_consistency(pair: ClockShiftPair, params, count: int = 100, max_degree: int = 6, seed: int = 0):
    """Largest deviations of phi from NF-invariance and *-compatibility."""
    from .polynomial import random_polynomial
    from .rewrite import normal_form

    sys = ReductionSystem.torus(params, backend="float")
    mats = phi_generators(pair, params)
    rng = np.random.default_rng(seed)
    nf_gap = star_gap = 0.0
    for _ in range(count):
        p = random_polynomial(rng, sys.domain, max_degree)
        img = evaluate_with(p, mats, pair.N)
        nf_gap = max(nf_gap, opnorm(evaluate_with(normal_form(p, sys), mats, pair.N) - img))
        star_gap = max(star_gap, opnorm(evaluate_with(p.adjoint(), mats, pair.N) - dag(img)))
    return {"nf": nf_gap, "star": star_gap}
