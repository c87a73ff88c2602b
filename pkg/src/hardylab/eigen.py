"""Discrete weighted eigenproblems for the Hardy operator.

Both the principal eigenpair of ``L`` and the stability ratio of a profile
are instances of one generalized problem

    quadratic form of L  =  sigma * (weighted L^2 mass),

restricted to functions vanishing at both grid ends.  The origin is
regularised by the ground-state substitution ``u = r^{tau_plus} v``: the
form identity

    integral(|grad(r^{tau_plus} v)|^2 + mu (r^{tau_plus} v)^2 / r^2) dx
        = integral(r^{2 tau_plus} |grad v|^2) dx

turns the singular quadratic form into a plain weighted Dirichlet form in
v, symmetric positive definite on the log grid.  The weight on the
right-hand side carries the same substitution.

Solved by inverse power iteration with the tridiagonal form matrix; the
smallest generalized eigenvalue is the largest eigenvalue of A^{-1} B.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from .core import HardyParams, spectral_constants
from .grid import GridFunction, RadialGrid
from .exceptions import NumericError

__all__ = ["form_matrix", "mass_diagonal", "smallest_eigenpair"]

MAX_SWEEPS = 500


def form_matrix(params: HardyParams, grid: RadialGrid):
    """Banded (1,1) storage of the substituted Dirichlet form on interior
    nodes: ``A[i][j] v_i v_j = integral r^{2 tau_plus + N - 2} v_s^2 ds``
    (up to the common sphere-area factor kept for consistency with the
    quadratures)."""
    sc = spectral_constants(params)
    area = sc.sphere_area
    expo = 2.0 * sc.tau_plus + params.N - 2.0
    r = grid.nodes
    h = grid.h
    # cell midpoints in s are geometric means in r
    rmid = np.sqrt(r[:-1] * r[1:])
    w = area * rmid**expo / h  # one value per cell, n+1 cells
    n = grid.n
    diag = w[:-1] + w[1:]
    off = -w[1:-1]
    ab = np.zeros((3, n))
    ab[0, 1:] = off
    ab[1, :] = diag
    ab[2, :-1] = off
    return ab


def mass_diagonal(params: HardyParams, grid: RadialGrid, weight: np.ndarray) -> np.ndarray:
    """Diagonal of the weighted mass form on interior nodes:
    ``integral weight(r) (r^{tau_plus} v)^2 dx`` by the nodal trapezoid rule
    in s."""
    sc = spectral_constants(params)
    r = grid.interior
    return sc.sphere_area * weight * r ** (2.0 * sc.tau_plus + params.N) * grid.h


def smallest_eigenpair(
    params: HardyParams,
    grid: RadialGrid,
    weight: np.ndarray,
    tol: float = 1e-10,
) -> tuple[float, GridFunction]:
    """Smallest eigenvalue of (form) v = sigma (mass) v and its positive
    eigenfunction mapped back to the original variable, max-normalised.

    ``weight`` is the nodal right-hand-side density at interior nodes
    (1 for the plain eigenpair of L, ``p u^{p-1}`` for stability ratios).
    Raises NumericError when inverse iteration has not settled after 500
    sweeps.
    """
    ab = form_matrix(params, grid)
    b = mass_diagonal(params, grid, np.asarray(weight, dtype=float))
    if np.any(b < 0):
        raise NumericError("negative mass weight in eigenproblem")
    if not np.any(b > 0):
        raise NumericError("identically zero mass weight; the ratio is infinite")
    r = grid.interior
    x = r * (1.0 - r)  # positive seed
    x /= np.sqrt(np.dot(b * x, x) + 1e-300)
    lam_prev = np.inf
    lam = np.inf
    for _ in range(MAX_SWEEPS):
        y = solve_banded((1, 1), ab, b * x)
        norm = np.sqrt(np.dot(b * y, y))
        if norm == 0.0 or not np.isfinite(norm):
            raise NumericError("inverse iteration collapsed")
        y /= norm
        # Rayleigh quotient in the generalized pencil
        ay = _tridiag_apply(ab, y)
        lam = float(np.dot(y, ay) / np.dot(y, b * y))
        res = np.linalg.norm(ay - lam * b * y) / (abs(lam) * np.linalg.norm(b * y) + 1e-300)
        if abs(lam - lam_prev) <= tol * abs(lam) and res < 1e-8:
            x = y
            break
        lam_prev = lam
        x = y
    else:
        raise NumericError(f"inverse power iteration did not converge in {MAX_SWEEPS} sweeps")
    v = np.abs(x)  # principal eigenvector has one sign
    sc = spectral_constants(params)
    full = np.zeros(grid.n + 2)
    full[1:-1] = v * grid.interior**sc.tau_plus
    full /= np.max(np.abs(full))
    return lam, GridFunction(grid, full)


def _tridiag_apply(ab: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = ab[1] * x
    out[:-1] += ab[0, 1:] * x[1:]
    out[1:] += ab[2, :-1] * x[:-1]
    return out


def rayleigh_quotient(params: HardyParams, grid: RadialGrid, weight, v_interior) -> float:
    """Generalized Rayleigh quotient of an interior-node vector in the
    substituted variable."""
    ab = form_matrix(params, grid)
    b = mass_diagonal(params, grid, np.asarray(weight, dtype=float))
    x = np.asarray(v_interior, dtype=float)
    return float(np.dot(x, _tridiag_apply(ab, x)) / np.dot(x, b * x))
