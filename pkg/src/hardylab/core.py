"""Closed-form spectral data of the radial Hardy operator.

The operator ``L u = -u'' - (N-1) u'/r + mu u / r^2`` on the punctured unit
ball has the two-parameter family of homogeneous power solutions
``r^tau`` with ``mu - tau (tau + N - 2) = 0``.  Everything downstream is
phrased in terms of the two indicial roots ``tau_minus <= tau_plus``, the
critical coefficient ``mu0 = -(N-2)^2/4`` at which they merge, the critical
source exponent ``p_star = 1 + 2/(-tau_minus)`` separating the regimes with
and without Dirac-type singular solutions, and the normalisation constant
``b_mu`` that converts a singular amplitude into the coefficient of the
point mass seen by the weighted distributional pairing.

All values here are exact closed forms; there is no discretisation in this
module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InvalidParameterError

__all__ = [
    "HardyParams",
    "SpectralConstants",
    "critical_mu",
    "spectral_constants",
    "is_critical",
    "sphere_area",
    "phi",
    "gamma",
    "measure_weight",
]

# Absolute tolerance deciding whether mu sits exactly at the critical value.
# The logarithmic branch of the singular solution is structurally different,
# so the selection must be deterministic.
CRITICAL_MU_ATOL = 1e-13


@dataclass(frozen=True)
class HardyParams:
    """The problem triple (N, mu, p).

    Parameters
    ----------
    N : int
        Spatial dimension, at least 3.
    mu : float
        Coefficient of the inverse-square potential; must satisfy
        ``mu >= -(N-2)^2/4`` so the quadratic form stays coercive.
    p : float
        Source exponent, strictly greater than 1.  Supercritical values
        ``p >= p_star`` are accepted here; the classification operations
        handle that regime explicitly.
    """

    N: int
    mu: float
    p: float

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 3:
            raise InvalidParameterError(f"dimension must be an integer >= 3, got {self.N!r}")
        mu0 = critical_mu(self.N)
        if self.mu < mu0 - CRITICAL_MU_ATOL:
            raise InvalidParameterError(
                f"mu={self.mu} below critical value mu0={mu0} for N={self.N}"
            )
        if not self.p > 1.0:
            raise InvalidParameterError(f"source exponent must satisfy p > 1, got {self.p}")


@dataclass(frozen=True)
class SpectralConstants:
    """Derived spectral data for one parameter triple.

    ``tau_minus + tau_plus = 2 - N`` and ``tau_minus * tau_plus = -mu``
    hold to machine precision; both are enforced by construction since the
    roots come from the explicit formula rather than a polynomial solver.
    """

    mu0: float
    tau_minus: float
    tau_plus: float
    p_star: float
    b_mu: float
    sphere_area: float


def critical_mu(N: int) -> float:
    """Smallest admissible Hardy coefficient, ``-(N-2)^2/4``."""
    if not isinstance(N, (int, np.integer)) or N < 3:
        raise InvalidParameterError(f"dimension must be an integer >= 3, got {N!r}")
    return -((N - 2) ** 2) / 4.0


def is_critical(params: HardyParams) -> bool:
    """True when mu sits at the critical coefficient (double indicial root)."""
    return abs(params.mu - critical_mu(params.N)) <= CRITICAL_MU_ATOL


def _gamma_half(x: float) -> float:
    # Gamma function for positive integer or half-integer argument, exact
    # up to rounding: recurse down to Gamma(1)=1 or Gamma(1/2)=sqrt(pi).
    out = 1.0
    while x > 1.5:
        x -= 1.0
        out *= x
    if abs(x - 1.0) < 1e-12:
        return out
    if abs(x - 0.5) < 1e-12:
        return out * math.sqrt(math.pi)
    raise InvalidParameterError(f"gamma helper only handles (half-)integers, got {x}")


def sphere_area(N: int) -> float:
    """Surface area of the unit sphere in R^N, ``2 pi^{N/2} / Gamma(N/2)``."""
    if not isinstance(N, (int, np.integer)) or N < 3:
        raise InvalidParameterError(f"dimension must be an integer >= 3, got {N!r}")
    return 2.0 * math.pi ** (N / 2.0) / _gamma_half(N / 2.0)


def spectral_constants(params: HardyParams) -> SpectralConstants:
    """All derived constants for ``params``.

    The roots are ``-(N-2)/2 -/+ sqrt(mu - mu0)``; at ``mu = mu0`` they
    coincide.  ``b_mu`` jumps between the branches: ``2 sqrt(mu-mu0) |S|``
    away from the critical value and ``|S|`` exactly at it.  The two
    branches are deliberately discontinuous; compare against the branch
    formula, not against a limit.
    """
    N = params.N
    mu0 = critical_mu(N)
    area = sphere_area(N)
    half = -(N - 2) / 2.0
    if is_critical(params):
        root = 0.0
        b_mu = area
    else:
        root = math.sqrt(params.mu - mu0)
        b_mu = 2.0 * root * area
    tau_minus = half - root
    tau_plus = half + root
    p_star = 1.0 + 2.0 / (-tau_minus)
    return SpectralConstants(
        mu0=mu0,
        tau_minus=tau_minus,
        tau_plus=tau_plus,
        p_star=p_star,
        b_mu=b_mu,
        sphere_area=area,
    )


def _check_radii(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or np.any(r > 1.0):
        raise DomainError("radius must lie in (0, 1]")
    return r


def phi(params: HardyParams, r):
    """Singular homogeneous solution at radius ``r``.

    Returns ``r^{tau_minus}`` for mu above critical and
    ``r^{tau_minus} (-ln r)`` at the critical coefficient (so the value at
    r = 1 is 0 on the critical branch).  Accepts scalars or arrays.
    """
    r = _check_radii(r)
    sc = spectral_constants(params)
    out = r**sc.tau_minus
    if is_critical(params):
        out = out * (-np.log(r))
    if np.ndim(out) == 0:
        return float(out)
    return out


def gamma(params: HardyParams, r):
    """Regular homogeneous solution ``r^{tau_plus}`` at radius ``r``."""
    r = _check_radii(r)
    sc = spectral_constants(params)
    out = r**sc.tau_plus
    if np.ndim(out) == 0:
        return float(out)
    return out


def measure_weight(params: HardyParams, r):
    """Radial density of the weighted measure: ``|S^{N-1}| r^{N-1} r^{tau_plus}``.

    Integrating a radial profile against this weight in dr realises the
    volume integral against the regular-solution-weighted measure.
    """
    r = _check_radii(r)
    sc = spectral_constants(params)
    out = sc.sphere_area * r ** (params.N - 1 + sc.tau_plus)
    if np.ndim(out) == 0:
        return float(out)
    return out
