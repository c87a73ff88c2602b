"""Singular linear boundary-value solves with prescribed singular amplitude.

Solves ``L u = f`` on (r_min, 1) with ``u(1) = 0`` and the inner condition
that the singular amplitude ``lim u(r) / phi(r)`` equals a prescribed
``kappa``.  On the log grid the interior rows form one tridiagonal system;
the inner closure imposes the exact trace of the amplitude-kappa
homogeneous solution that vanishes at r = 1 (``kappa (phi - gamma)`` away
from the critical coefficient, ``kappa phi`` at it, where the logarithmic
branch already vanishes at r = 1).  The neglected contribution of the
right-hand side at the cutoff decays like a positive power of r_min and is
confined to a boundary layer of a few dozen nodes; the cutoff-robustness
test quantifies it.

The interior matrix is tridiagonal with nonpositive off-diagonals whenever
``h <= 2/(N-2)``, which makes the discrete comparison principle exact:
ordered data yield ordered solutions nodewise, with no rounding
violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .core import HardyParams, gamma, is_critical, phi, spectral_constants
from .grid import GridFunction, RadialGrid, apply_L, build_grid, integrate_dmu
from .exceptions import InvalidInputError, InvalidParameterError, NumericError

__all__ = [
    "LinearProblem",
    "BoundReport",
    "ScanReport",
    "solve_linear",
    "inner_closure_value",
    "check_barrier_bounds",
    "integrability_scan",
]


@dataclass(frozen=True)
class LinearProblem:
    """One singular linear solve: operator parameters, right-hand side,
    prescribed singular amplitude."""

    params: HardyParams
    f: GridFunction
    kappa: float = 0.0


def interior_bands(params: HardyParams, grid: RadialGrid):
    """Banded (1,1) storage of the interior tridiagonal operator rows.

    Row i of the system is the stencil of ``r^2 L / r^2`` at interior node
    i; returns (ab, lower, diag, upper) with ab ready for solve_banded.
    """
    h = grid.h
    ri2 = grid.interior**2
    lower = (-1.0 / h**2 + (params.N - 2) / (2.0 * h)) / ri2
    diag = (2.0 / h**2 + params.mu) / ri2
    upper = (-1.0 / h**2 - (params.N - 2) / (2.0 * h)) / ri2
    n = grid.n
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1, :] = diag
    ab[2, :-1] = lower[1:]
    return ab, lower, diag, upper


def inner_closure_value(params: HardyParams, r_min: float) -> float:
    """Trace at r_min of the unit-amplitude homogeneous solution vanishing
    at r = 1."""
    if is_critical(params):
        return phi(params, r_min)
    return phi(params, r_min) - gamma(params, r_min)


def solve_linear(prob: LinearProblem) -> GridFunction:
    """Solve the singular linear problem as one tridiagonal system.

    The returned profile has ``u(1) = 0`` exactly and
    ``u(r_min) = kappa * inner_closure_value`` exactly; the interior
    residual under ``apply_L`` is O(h^2).
    """
    params, f, kappa = prob.params, prob.f, prob.kappa
    g = f.grid
    if not np.all(np.isfinite(f.values)):
        raise InvalidInputError("right-hand side must be finite")
    ab, lower, _, _ = interior_bands(params, g)
    u0 = kappa * inner_closure_value(params, g.r_min)
    rhs = f.values[1:-1].copy()
    rhs[0] -= lower[0] * u0
    try:
        ui = solve_banded((1, 1), ab, rhs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - cannot occur for mu >= mu0
        raise NumericError(f"singular tridiagonal system: {exc}") from exc
    if not np.all(np.isfinite(ui)):
        raise NumericError("tridiagonal solve produced non-finite values")
    out = np.empty_like(f.values)
    out[0] = u0
    out[-1] = 0.0
    out[1:-1] = ui
    return GridFunction(g, out)


@dataclass(frozen=True)
class BoundReport:
    """Smallest constant realising the envelope bound for one solve.

    ``regime`` records which envelope applied: "below" (tau < tau_plus,
    envelope r^tau), "at" (tau = tau_plus, envelope r^tau (1 - ln r)) or
    "above" (tau > tau_plus, envelope r^{tau_plus}).
    """

    regime: str
    constant: float
    tau: float
    tau_plus: float
    profile: GridFunction = field(repr=False)


def check_barrier_bounds(
    params: HardyParams, f: GridFunction, tau: float, c2: float
) -> BoundReport:
    """Solve with kappa = 0 and report the smallest envelope constant.

    Preconditions: mu above critical, ``0 <= f <= c2 r^{tau-2}`` nodewise
    and ``tau > tau_minus``.  The constant is a grid maximum of ratios,
    excluding the two nodes nearest each boundary where the closure and the
    0/0 limit at r = 1 distort the ratio.
    """
    sc = spectral_constants(params)
    if is_critical(params):
        raise InvalidParameterError("barrier bounds require mu strictly above critical")
    if tau <= sc.tau_minus:
        raise InvalidParameterError(f"tau must exceed tau_minus={sc.tau_minus}, got {tau}")
    r = f.grid.nodes
    envelope = c2 * r ** (tau - 2.0)
    v = f.values
    if np.any(v < -1e-14 * (1.0 + np.abs(v).max())):
        raise InvalidInputError("right-hand side must be nonnegative")
    if np.any(v > envelope * (1.0 + 1e-12) + 1e-300):
        raise InvalidInputError("right-hand side exceeds the stated envelope c2 r^(tau-2)")
    u = solve_linear(LinearProblem(params, f, 0.0))
    sel = slice(2, -2)
    rs = r[sel]
    us = u.values[sel]
    if abs(tau - sc.tau_plus) < 1e-12:
        regime = "at"
        denom = rs**sc.tau_plus * (1.0 - np.log(rs))
    elif tau < sc.tau_plus:
        regime = "below"
        denom = rs**tau
    else:
        regime = "above"
        denom = rs**sc.tau_plus
    constant = float(np.max(us / denom))
    if not np.isfinite(constant):
        raise NumericError("envelope constant did not come out finite")
    return BoundReport(regime=regime, constant=constant, tau=tau, tau_plus=sc.tau_plus, profile=u)


@dataclass(frozen=True)
class ScanReport:
    """Truncated integrals of a power-log density over shrinking cutoffs."""

    r_mins: tuple
    integrals: tuple
    increments: tuple
    verdict: str  # "integrable" | "divergent"
    limit_estimate: float | None


# Increment-ratio threshold separating a geometrically convergent tail from
# logarithmic or power-law growth.
_GEOMETRIC_RATIO = 0.9


def integrability_scan(
    params: HardyParams,
    f_symbolic: tuple[float, int],
    r_min_sequence,
    h_target: float = 7e-3,
) -> ScanReport:
    """Scan ``integral of r^a |ln r|^logpow`` over a shrinking cutoff sequence.

    Declares "integrable" when successive increments decay geometrically
    (Cauchy tail) and "divergent" otherwise.  Each truncated integral is a
    quadrature on its own log grid with spacing close to ``h_target``.
    """
    a, logpow = f_symbolic
    r_mins = [float(rm) for rm in r_min_sequence]
    if len(r_mins) < 3:
        raise InvalidParameterError("need at least 3 cutoffs to judge the tail")
    if any(r2 >= r1 for r1, r2 in zip(r_mins, r_mins[1:])):
        raise InvalidParameterError("cutoff sequence must be strictly decreasing")
    integrals = []
    for rm in r_mins:
        n = max(16, int(np.ceil(np.log(1.0 / rm) / h_target)) - 1)
        g = build_grid(rm, n)
        r = g.nodes
        vals = r**a
        if logpow:
            vals = vals * np.abs(np.log(r)) ** logpow
        integrals.append(integrate_dmu(params, GridFunction(g, vals)))
    increments = [b - a_ for a_, b in zip(integrals, integrals[1:])]
    scale = max(abs(i) for i in integrals) + 1e-300
    ratios = []
    for d0, d1 in zip(increments, increments[1:]):
        if abs(d0) <= 1e-13 * scale and abs(d1) <= 1e-13 * scale:
            ratios.append(0.0)  # tail already exhausted
        elif abs(d0) <= 1e-13 * scale:
            ratios.append(np.inf)
        else:
            ratios.append(d1 / d0)
    tail = ratios[-2:] if len(ratios) >= 2 else ratios
    integrable = all(r_ < _GEOMETRIC_RATIO for r_ in tail)
    verdict = "integrable" if integrable else "divergent"
    limit = float(integrals[-1]) if integrable else None
    return ScanReport(
        r_mins=tuple(r_mins),
        integrals=tuple(float(v) for v in integrals),
        increments=tuple(float(d) for d in increments),
        verdict=verdict,
        limit_estimate=limit,
    )


def residual(params: HardyParams, u: GridFunction, f: GridFunction) -> np.ndarray:
    """Interior residual ``apply_L(u) - f`` (zeros at the boundary nodes)."""
    res = apply_L(params, u).values - f.values
    res[0] = 0.0
    res[-1] = 0.0
    return res
