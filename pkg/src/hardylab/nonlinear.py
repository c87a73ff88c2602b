"""Minimal solutions by monotone iteration, with explicit barrier
certificates.

The Picard scheme

    v_0 = solve(0, kappa),    v_n = solve(v_{n-1}^p, kappa)

is nodewise increasing on the discrete system (ordered data give ordered
solutions exactly), so it either converges to the minimal solution at this
amplitude or grows without bound; divergence of the iteration is the
operational definition of "no minimal solution at this kappa".

Convergence for small amplitudes is certified constructively: with
``w0 = solve(0, 1)``, ``w1 = solve(w0^p, 0)`` and ``c6 = max w1/w0``, the
barrier ``w_t = t kappa^p w1 + kappa w0`` is a supersolution whenever
``t >= (c6 t kappa^{p-1} + 1)^p``, which is satisfiable up to the explicit
amplitude threshold ``k_p``.  All of this is computed on the grid, so the
certificate chain is exact for the discrete system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import HardyParams, phi, spectral_constants
from .grid import GridFunction, RadialGrid, apply_L, integrate_dmu
from .linear import LinearProblem, inner_closure_value, solve_linear
from .exceptions import InvalidParameterError, UnsupportedRegimeError

__all__ = [
    "SolverOptions",
    "IterationReport",
    "BarrierCertificate",
    "barrier_constant_c6",
    "guaranteed_threshold",
    "minimal_solution",
    "supersolution_check",
    "barrier_profile",
]


@dataclass(frozen=True)
class SolverOptions:
    """Stopping controls for the monotone iteration.

    The iteration is geometric near the minimal branch; these defaults
    separate converged, diverged and undecided runs cleanly at desk scale.
    """

    tol: float = 1e-10
    max_iter: int = 10000
    blowup_threshold: float = 1e8


@dataclass(frozen=True)
class IterationReport:
    status: str  # "Converged" | "Diverged" | "MaxIterations"
    iterations: int
    final_change: float
    profile: GridFunction = field(repr=False)
    lp_dmu_norm: float

    def to_json_dict(self, profile_csv: str | None = None) -> dict:
        out = {
            "status": self.status,
            "iterations": self.iterations,
            "final_change": self.final_change,
            "lp_dmu_norm": self.lp_dmu_norm,
        }
        if profile_csv is not None:
            out["profile_csv"] = profile_csv
        return out


@dataclass(frozen=True)
class BarrierCertificate:
    c6: float
    k_p: float
    t_p: float
    valid: bool


def _subcritical_or_raise(params: HardyParams):
    sc = spectral_constants(params)
    if params.p >= sc.p_star:
        raise UnsupportedRegimeError(
            f"p={params.p} >= p_star={sc.p_star}: the singular power is not integrable "
            "against the weighted measure (supercritical regime; see the classify module)"
        )
    return sc


def barrier_constant_c6(params: HardyParams, grid: RadialGrid) -> float:
    """Maximum over interior nodes of ``solve(w0^p, 0) / w0`` with
    ``w0 = solve(0, 1)``.

    Requires the subcritical regime so that w0^p is integrable against the
    weighted measure; the ratio tends to 0 at the cutoff (regular-over-
    singular decay), so the maximum sits in the interior.
    """
    _subcritical_or_raise(params)
    w0 = solve_linear(LinearProblem(params, GridFunction.zeros(grid), 1.0))
    w1 = solve_linear(LinearProblem(params, GridFunction(grid, w0.values**params.p), 0.0))
    ratio = w1.values[1:-1] / w0.values[1:-1]
    return float(np.max(ratio))


def guaranteed_threshold(params: HardyParams, c6: float) -> BarrierCertificate:
    """Amplitude threshold ``k_p`` and barrier multiplier ``t_p`` from the
    barrier constant.

    ``t_p = (p/(p-1))^p`` and ``k_p = (1/(c6 p))^{1/(p-1)} (p-1)/p``; at
    ``k = k_p`` the fixed-point condition ``(c6 t k^{p-1} + 1)^p <= t``
    holds with equality at t_p.
    """
    if c6 <= 0.0:
        raise InvalidParameterError(f"barrier constant must be positive, got {c6}")
    p = params.p
    t_p = (p / (p - 1.0)) ** p
    k_p = (1.0 / (c6 * p)) ** (1.0 / (p - 1.0)) * (p - 1.0) / p
    f_at_tp = (c6 * t_p * k_p ** (p - 1.0) + 1.0) ** p
    valid = f_at_tp <= t_p * (1.0 + 1e-12)
    return BarrierCertificate(c6=float(c6), k_p=float(k_p), t_p=float(t_p), valid=bool(valid))


def barrier_profile(params: HardyParams, grid: RadialGrid, kappa: float, t: float) -> GridFunction:
    """The explicit supersolution candidate ``t kappa^p w1 + kappa w0``."""
    w0 = solve_linear(LinearProblem(params, GridFunction.zeros(grid), 1.0))
    w1 = solve_linear(LinearProblem(params, GridFunction(grid, w0.values**params.p), 0.0))
    return GridFunction(grid, t * kappa**params.p * w1.values + kappa * w0.values)


def _blowup_measure(params: HardyParams, grid: RadialGrid, values: np.ndarray) -> float:
    # Amplitude-like sup: dividing by (phi + 1) makes the measure finite on
    # the singular envelope itself, so the threshold detects genuine interior
    # blow-up independently of how deep the cutoff sits.
    envelope = phi(params, grid.nodes) + 1.0
    return float(np.max(values / envelope))


def minimal_solution(
    params: HardyParams,
    grid: RadialGrid,
    kappa: float,
    opts: SolverOptions = SolverOptions(),
) -> IterationReport:
    """Run the monotone iteration at singular amplitude ``kappa``.

    Stops "Converged" when the relative sup-norm update drops below
    ``opts.tol``, "Diverged" when the amplitude-normalised sup exceeds
    ``opts.blowup_threshold``, "MaxIterations" otherwise.  Iterates are
    nodewise nondecreasing throughout.
    """
    if kappa < 0.0:
        raise InvalidParameterError(f"singular amplitude must be nonnegative, got {kappa}")
    _subcritical_or_raise(params)
    zero = GridFunction.zeros(grid)
    v = solve_linear(LinearProblem(params, zero, kappa))
    status = "MaxIterations"
    change = np.inf
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        if _blowup_measure(params, grid, v.values) > opts.blowup_threshold:
            status = "Diverged"
            break
        rhs = GridFunction(grid, v.values**params.p)
        v_next = solve_linear(LinearProblem(params, rhs, kappa))
        change = float(np.max(np.abs(v_next.values - v.values)) / (1.0 + np.max(v_next.values)))
        v = v_next
        if change < opts.tol:
            status = "Converged"
            break
    lp = integrate_dmu(params, GridFunction(grid, np.abs(v.values) ** params.p))
    return IterationReport(
        status=status,
        iterations=iterations,
        final_change=change,
        profile=v,
        lp_dmu_norm=float(lp),
    )


def supersolution_check(
    params: HardyParams, u: GridFunction, rel_slack: float = 1e-6
) -> bool:
    """True when ``apply_L(u) >= u^p`` at every interior node up to a
    nodewise relative slack absorbing discretisation and rounding."""
    if np.any(u.values < 0.0):
        raise InvalidParameterError("supersolution check expects a nonnegative profile")
    lhs = apply_L(params, u).values[1:-1]
    rhs = u.values[1:-1] ** params.p
    slack = rel_slack * (1.0 + np.abs(lhs) + rhs)
    return bool(np.all(lhs >= rhs - slack))
