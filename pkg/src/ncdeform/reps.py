"""Finite-dimensional representations and their numerical checks.

Torus family (theta = p/N): W is a weighted cyclic shift with
W[l, l+1] = sqrt(mu + cos(2 pi l theta) / cos(pi theta)) and a corner entry
W[N, 1] = sqrt(mu + 1 / cos(pi theta)); L is diagonal with
lambda_l = exp(i (pi/2 - pi theta + 2 pi l theta)).

Sphere family (0 < theta < 1/N): W is strictly upper bidiagonal with
W[l, l+1] = sqrt(2 sin(pi l theta) sin(pi (N-l) theta) / cos(pi theta)).

Indices in the formulas above are 1-based; arrays are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import AlphabetMismatch, DegenerateFit, DomainError, InadmissibleParams
from .params import derive_params
from .polynomial import NCPolynomial
from .words import SURFACE, TORUS


def opnorm(a) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(a, 2))


def dag(a):
    return a.conj().T


@dataclass(frozen=True)
class RepSpec:
    family: str
    N: int
    theta: float
    p: int | None = None
    mu: float | None = None
    printed_cos: bool = False

    @property
    def hbar(self) -> float:
        return math.tan(math.pi * self.theta)


@dataclass(frozen=True, eq=False)
class MatrixRep:
    spec: RepSpec
    W: np.ndarray
    Lam: np.ndarray | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def N(self):
        return self.spec.N

    @property
    def Wd(self):
        return dag(self.W)

    @property
    def X(self):
        return (self.W + self.Wd) / 2

    @property
    def Y(self):
        return (self.W - self.Wd) / 2j

    @property
    def Z(self):
        return (self.W @ self.Wd - self.Wd @ self.W) / (2 * self.spec.hbar)

    @property
    def mu(self) -> float:
        if self.spec.mu is not None:
            return self.spec.mu
        if "mu" not in self._cache:
            self._cache["mu"] = fit_mu(self)
        return self._cache["mu"]

    def with_matrices(self, W=None, Lam=None) -> MatrixRep:
        """Copy with replaced generator matrices (for fault injection)."""
        return MatrixRep(self.spec, self.W if W is None else W, self.Lam if Lam is None else Lam)


@dataclass
class ResidualReport:
    residuals: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(r < self.tol for r in self.residuals.values())

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def as_dict(self):
        return {"residuals": dict(self.residuals), "max_residual": self.max_residual,
                "tol": self.tol, "pass": self.passed}


def torus_rep(N: int, p: int, mu: float, printed_cos: bool = False) -> MatrixRep:
    """N-dimensional torus representation at theta = p/N.

    ``printed_cos=True`` divides by cos(theta) instead of cos(pi theta);
    that variant does not satisfy the defining relations.
    """
    if N < 2 or gcd(p, N) != 1:
        raise ValueError("need N >= 2 and gcd(p, N) = 1")
    theta = p / N
    params = derive_params(mu, theta)
    if not params.admissible:
        raise InadmissibleParams(f"|mu cos(pi theta)| = {abs(mu * params.cos_pi_theta):.6g} <= 1")
    c = math.cos(theta) if printed_cos else math.cos(math.pi * theta)
    W = np.zeros((N, N), dtype=complex)
    for l in range(1, N):
        W[l - 1, l] = math.sqrt(mu + math.cos(2 * math.pi * l * theta) / c)
    W[N - 1, 0] = math.sqrt(mu + 1 / c)
    ls = np.arange(1, N + 1)
    lam = np.exp(1j * (math.pi / 2 - math.pi * theta + 2 * math.pi * ls * theta))
    spec = RepSpec("torus", N, theta, p=p, mu=float(mu), printed_cos=printed_cos)
    return MatrixRep(spec, W, np.diag(lam))


def sphere_rep(N: int, theta: float) -> MatrixRep:
    """N-dimensional sphere representation; mu is fitted, not supplied."""
    if N < 2:
        raise ValueError("need N >= 2")
    W = np.zeros((N, N), dtype=complex)
    c = math.cos(math.pi * theta)
    for l in range(1, N):
        rad = 2 * math.sin(math.pi * l * theta) * math.sin(math.pi * (N - l) * theta) / c
        if rad < 0:
            raise DomainError(f"negative radicand {rad:.3g} at l = {l}")
        W[l - 1, l] = math.sqrt(rad)
    return MatrixRep(RepSpec("sphere", N, float(theta)), W)


def _yz_parts(rep):
    """[Y,Z] - i hbar (2X^3 + XY^2 + Y^2X) and the mu-coefficient 2 i hbar X."""
    X, Y, Z = rep.X, rep.Y, rep.Z
    h = rep.spec.hbar
    A = Y @ Z - Z @ Y - 1j * h * (2 * X @ X @ X + X @ Y @ Y + Y @ Y @ X)
    return A, 2j * h * X


def fit_mu(rep: MatrixRep) -> float:
    """Least-squares mu for [Y,Z] = i hbar (2X^3 + XY^2 + Y^2X - 2 mu X).

    The residual A + mu B is affine in mu, so the Frobenius minimiser is
    mu = -Re<B, A> / <B, B>.
    """
    A, B = _yz_parts(rep)
    bb = np.vdot(B, B).real
    if bb == 0:
        raise DegenerateFit("X vanishes; mu is undetermined")
    return float(-np.vdot(B, A).real / bb)


def surface_residuals(rep: MatrixRep, mu: float) -> dict:
    X, Y, Z = rep.X, rep.Y, rep.Z
    h = rep.spec.hbar
    I = np.eye(rep.N)
    return {
        "XY": opnorm(X @ Y - Y @ X - 1j * h * Z),
        "YZ": opnorm(Y @ Z - Z @ Y - 1j * h * (2 * X @ X @ X + X @ Y @ Y + Y @ Y @ X - 2 * mu * X @ I)),
        "ZX": opnorm(Z @ X - X @ Z - 1j * h * (2 * Y @ Y @ Y + Y @ X @ X + X @ X @ Y - 2 * mu * Y @ I)),
    }


def relation_residuals(rep: MatrixRep, tol: float = 1e-12) -> ResidualReport:
    """Operator-norm residual of every defining relation."""
    res = {}
    if rep.spec.family == "torus":
        params = derive_params(rep.spec.mu, rep.spec.theta)
        q, z, mu = params.q, params.z, params.mu
        W, Wd, Lm = rep.W, rep.Wd, rep.Lam
        Ld = dag(Lm)
        I = np.eye(rep.N)
        res.update({
            "arel1a (W L = q L W)": opnorm(W @ Lm - q * Lm @ W),
            "arel1b (W* L = qbar L W*)": opnorm(Wd @ Lm - q.conjugate() * Lm @ Wd),
            "arel2a (W* L* = q L* W*)": opnorm(Wd @ Ld - q * Ld @ Wd),
            "arel2b (W L* = qbar L* W)": opnorm(W @ Ld - q.conjugate() * Ld @ W),
            "arel3a (L L* = 1)": opnorm(Lm @ Ld - I),
            "arel3b (L* L = 1)": opnorm(Ld @ Lm - I),
            "arel4 (W W* = z L + zbar L* + mu)": opnorm(W @ Wd - z * Lm - z.conjugate() * Ld - mu * I),
            "arel5 (W* W = -zbar L - z L* + mu)": opnorm(Wd @ W + z.conjugate() * Lm + z * Ld - mu * I),
        })
        mu_used = mu
    else:
        mu_used = rep.mu
    res.update({f"[{k[0]},{k[1]}]": v for k, v in surface_residuals(rep, mu_used).items()})
    return ResidualReport(res, tol)


def hermiticity_residuals(rep: MatrixRep) -> dict:
    return {name: opnorm(G - dag(G)) for name, G in (("X", rep.X), ("Y", rep.Y), ("Z", rep.Z))}


def casimir_matrix(rep: MatrixRep) -> np.ndarray:
    """(X^2 + Y^2 - mu)^2 + Z^2."""
    X, Y, Z = rep.X, rep.Y, rep.Z
    M = X @ X + Y @ Y - rep.mu * np.eye(rep.N)
    return M @ M + Z @ Z


def casimir_residual(rep: MatrixRep) -> float:
    return opnorm(casimir_matrix(rep) - np.eye(rep.N))


def centrality_residuals(rep: MatrixRep) -> dict:
    C = casimir_matrix(rep)
    return {name: opnorm(G @ C - C @ G) for name, G in (("X", rep.X), ("Y", rep.Y), ("Z", rep.Z))}


def lambda_reconstruct(rep: MatrixRep):
    """Build L from W alone; return it with its distance to the stored L."""
    if rep.spec.family != "torus":
        raise AlphabetMismatch("only torus representations carry L")
    W, Wd = rep.W, rep.Wd
    h = rep.spec.hbar
    I = np.eye(rep.N)
    rec = (W @ Wd - Wd @ W) / (2 * h) + 0.5j * (W @ Wd + Wd @ W - 2 * rep.spec.mu * I)
    return rec, opnorm(rec - rep.Lam)


def generator_matrices(rep: MatrixRep, alphabet):
    if alphabet is TORUS:
        if rep.Lam is None:
            raise AlphabetMismatch("sphere representations have no L")
        return [rep.Lam, dag(rep.Lam), rep.W, rep.Wd]
    if alphabet is SURFACE:
        return [rep.X, rep.Y, rep.Z]
    raise AlphabetMismatch(f"unknown alphabet {alphabet.name}")


def evaluate_with(p: NCPolynomial, mats, dim: int) -> np.ndarray:
    """Sum of coefficient * product of generator matrices over the words of p."""
    to_c = p.domain.to_complex
    memo = {(): np.eye(dim, dtype=complex)}

    def word_matrix(word):
        if word not in memo:
            memo[word] = word_matrix(word[:-1]) @ mats[word[-1]]
        return memo[word]

    out = np.zeros((dim, dim), dtype=complex)
    for word, c in p.items():
        out += to_c(c) * word_matrix(word)
    return out


def evaluate(p: NCPolynomial, rep: MatrixRep) -> np.ndarray:
    """Image of ``p`` under the representation (a *-homomorphism)."""
    if not any(p.words()):
        return evaluate_with(p, [], rep.N)
    return evaluate_with(p, generator_matrices(rep, p.alphabet), rep.N)


# -- scaling limits ------------------------------------------------------

@dataclass
class ConvergenceTable:
    family: str
    rows: list
    summary: list
    order: float
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        return {"family": self.family, "order": self.order, "summary": self.summary,
                "rows": self.rows, **self.extra}

    def csv_rows(self):
        return [(r["eps"], r["l"], r["value"], r["limit"], r["abs_err"]) for r in self.rows]


def fitted_order(eps, errs) -> float:
    """Slope of log(err) against log(eps)."""
    slope, _ = np.polyfit(np.log(eps), np.log(errs), 1)
    return float(slope)


def scaling_torus(N: int, p: int, eps_ladder) -> ConvergenceTable:
    """Rescaled W~ = eps W at mu = 1/eps^2 against the unitary limit 1."""
    theta = p / N
    bound_c = abs(math.cos(math.pi * theta))
    rows, summary = [], []
    lam0 = None
    lam_drift = 0.0
    for eps in eps_ladder:
        rep = torus_rep(N, p, 1.0 / eps**2)
        Wt = eps * rep.W
        entries = [Wt[l - 1, l] for l in range(1, N)] + [Wt[N - 1, 0]]
        worst = 0.0
        for l, v in enumerate(entries, start=1):
            err = float(abs(v - 1))
            worst = max(worst, err)
            rows.append({"eps": eps, "l": l, "value": float(v.real), "limit": 1.0, "abs_err": err})
        if lam0 is None:
            lam0 = rep.Lam
        lam_drift = max(lam_drift, opnorm(rep.Lam - lam0))
        bound = eps**2 / bound_c
        summary.append({"eps": eps, "max_abs_err": worst, "bound": bound, "within_bound": bool(worst <= bound)})
    order = fitted_order([s["eps"] for s in summary], [s["max_abs_err"] for s in summary])
    return ConvergenceTable("torus", rows, summary, order, {"N": N, "p": p, "lambda_drift": lam_drift})


def su2_deviation(rep: MatrixRep, eps: float) -> float:
    """Relative distance of the rescaled [Y~, Z~] from -2 i k mu X~."""
    X, Y, Z = rep.X / eps, rep.Y / eps, rep.Z / eps
    k = rep.spec.hbar / eps
    comm = Y @ Z - Z @ Y
    return opnorm(comm + 2j * k * rep.mu * X) / opnorm(comm)


def scaling_sphere(N: int, theta_tilde: float, eps_ladder) -> ConvergenceTable:
    """Rescaled W~ = W / eps at theta = eps theta~ against sqrt(2) pi theta~ sqrt(l (N-l))."""
    rows, summary = [], []
    for eps in eps_ladder:
        theta = eps * theta_tilde
        if not 0 < theta < 1 / N:
            raise ValueError(f"eps * theta_tilde = {theta} is outside (0, 1/N)")
        rep = sphere_rep(N, theta)
        worst_abs = worst_rel = 0.0
        for l in range(1, N):
            v = float(rep.W[l - 1, l].real) / eps
            lim = math.sqrt(2) * math.pi * theta_tilde * math.sqrt(l * (N - l))
            err = abs(v - lim)
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / lim)
            rows.append({"eps": eps, "l": l, "value": v, "limit": lim, "abs_err": err})
        summary.append({"eps": eps, "max_abs_err": worst_abs, "max_rel_err": worst_rel,
                        "mu": rep.mu, "su2_deviation": su2_deviation(rep, eps)})
    order = fitted_order([s["eps"] for s in summary], [s["max_abs_err"] for s in summary])
    return ConvergenceTable("sphere", rows, summary, order, {"N": N, "theta_tilde": theta_tilde})


def rep_params(rep: MatrixRep):
    """Parameter pack of a torus representation, with theta kept exact."""
    from fractions import Fraction

    return derive_params(rep.spec.mu, Fraction(rep.spec.p, rep.N))


def nf_consistency(rep: MatrixRep, count: int = 100, max_degree: int = 6, seed: int = 0):
    """max || evaluate(NF(p)) - evaluate(p) || over random polynomials."""
    from .polynomial import random_polynomial
    from .rewrite import ReductionSystem, normal_form

    sys = ReductionSystem.torus(rep_params(rep), backend="float")
    mats = generator_matrices(rep, TORUS)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        p = random_polynomial(rng, sys.domain, max_degree)
        worst = max(worst, opnorm(evaluate_with(normal_form(p, sys), mats, rep.N) - evaluate_with(p, mats, rep.N)))
    return worst
