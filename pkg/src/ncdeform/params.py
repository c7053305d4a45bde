"""Deformation parameters (mu, theta) and the constants derived from them."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InadmissibleParams, PoleError


def parse_number(value):
    """Turn ``value`` into a Fraction when it is exact, else a float.

    Strings of the form ``"p/N"`` or integer literals are exact; decimal
    strings and Python floats stay floating point.
    """
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text or text.lstrip("+-").isdigit():
            try:
                return Fraction(text)
            except ValueError:
                raise ValueError(f"not a rational number: {value!r}") from None
        return float(text)
    return float(value)


@dataclass(frozen=True)
class DeformParams:
    """Parameter pack for the deformed torus algebra.

    ``theta_exact`` / ``mu_exact`` are set when the inputs were rational,
    which is what the exact coefficient backend needs.
    """

    mu: float
    theta: float
    q: complex
    z: complex
    hbar: float
    admissible: bool
    mu_exact: Fraction | None = None
    theta_exact: Fraction | None = None

    @property
    def zbar(self) -> complex:
        return self.z.conjugate()

    @property
    def qhalf(self) -> complex:
        """Principal square root of q, fixed as exp(i pi theta)."""
        return cmath.exp(1j * math.pi * self.theta)

    @property
    def cos_pi_theta(self) -> float:
        return math.cos(math.pi * self.theta)

    @property
    def is_exact(self) -> bool:
        return self.mu_exact is not None and self.theta_exact is not None

    @property
    def lemma_bound(self) -> float:
        """Lower spectral bound mu - 1/|cos pi theta| for mu + zU + zbar U*."""
        return self.mu - 1.0 / abs(self.cos_pi_theta)

    def require_admissible(self):
        if not self.admissible:
            raise InadmissibleParams(
                f"need mu > 0 and |mu cos(pi theta)| > 1; got mu={self.mu}, theta={self.theta}"
            )
        return self

    def as_dict(self):
        out = {"mu": self.mu, "theta": self.theta}
        if self.mu_exact is not None:
            out["mu_exact"] = str(self.mu_exact)
        if self.theta_exact is not None:
            out["theta_exact"] = str(self.theta_exact)
        out.update(hbar=self.hbar, q=self.q, z=self.z, admissible=self.admissible)
        return out


def derive_params(mu, theta) -> DeformParams:
    """Derive q, z, hbar and the admissibility flag from (mu, theta).

    Parameters
    ----------
    mu : int, Fraction, float or str
    theta : int, Fraction, float or str
        A string ``"p/N"`` keeps theta exact.

    Raises
    ------
    PoleError
        If theta = 1/2 mod 1, where cos(pi theta) = 0.
    """
    mu_v = parse_number(mu)
    th_v = parse_number(theta)
    if isinstance(th_v, Fraction):
        if (2 * th_v).denominator == 1 and (2 * th_v).numerator % 2 == 1:
            raise PoleError(f"cos(pi theta) = 0 at theta = {th_v}")
    th = float(th_v)
    c = math.cos(math.pi * th)
    if abs(c) < 1e-15:
        raise PoleError(f"cos(pi theta) = 0 at theta = {th}")
    m = float(mu_v)
    # exact zero at theta = 0 instead of sin(0)-rounding noise
    if th_v == 0:
        q, z, hbar = 1 + 0j, -0.5j, 0.0
    else:
        q = cmath.exp(2j * math.pi * th)
        z = cmath.exp(1j * math.pi * th) / (2j * c)
        hbar = math.tan(math.pi * th)
    return DeformParams(
        mu=m,
        theta=th,
        q=q,
        z=z,
        hbar=hbar,
        admissible=(m > 0 and abs(m * c) > 1),
        mu_exact=mu_v if isinstance(mu_v, Fraction) else None,
        theta_exact=th_v if isinstance(th_v, Fraction) else None,
    )
