"""Logarithmic radial mesh and the discrete radial operators.

Nodes are uniform in ``s = ln(1/r)`` between an inner cutoff ``r_min`` and
the boundary ``r = 1``.  In that coordinate the scaled operator
``r^2 L`` becomes constant-coefficient,

    r^2 L u = -u_ss + (N-2) u_s + mu u,

so one second-order central stencil resolves the ``r^tau`` singular
behaviour with uniformly bounded relative truncation error.  The adjoint
drift operator transforms the same way with ``N-2`` replaced by
``N - 2 + 2 tau_plus`` and no zeroth-order term.

Quadrature against the weighted measure is the trapezoid rule in ``s``
with the Jacobian ``dr = r ds`` folded into the weights.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .core import HardyParams, measure_weight, spectral_constants
from .exceptions import InvalidParameterError, NumericError

__all__ = ["RadialGrid", "GridFunction", "build_grid", "apply_L", "apply_L_star", "integrate_dmu"]


@dataclass(frozen=True)
class RadialGrid:
    """Radii ``r_min = r_0 < r_1 < ... < r_{n+1} = 1`` uniform in ln(1/r).

    ``n`` counts interior nodes; ``h`` is the uniform spacing in s.
    """

    r_min: float
    n: int
    nodes: np.ndarray = field(repr=False)
    h: float

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]

    @property
    def s_max(self) -> float:
        return float(np.log(1.0 / self.r_min))

    def index_of(self, r: float) -> int:
        """Index of the node nearest to radius r."""
        s = -np.log(r)
        j = (self.n + 1) - s / self.h
        return int(np.clip(round(j), 0, self.n + 1))


def build_grid(r_min: float, n: int) -> RadialGrid:
    """Build the log-uniform grid with ``n`` interior nodes on [r_min, 1]."""
    if not (0.0 < r_min < 1.0):
        raise InvalidParameterError(f"r_min must lie in (0, 1), got {r_min}")
    if not isinstance(n, (int, np.integer)) or n < 16:
        raise InvalidParameterError(f"interior node count must be an integer >= 16, got {n!r}")
    h = np.log(1.0 / r_min) / (n + 1)
    i = np.arange(n + 2)
    nodes = np.exp(-(n + 1 - i) * h)
    nodes[0] = r_min
    nodes[-1] = 1.0
    return RadialGrid(r_min=float(r_min), n=int(n), nodes=nodes, h=float(h))


@dataclass(frozen=True)
class GridFunction:
    """A radial profile sampled at every node of a RadialGrid."""

    grid: RadialGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.nodes.shape:
            raise InvalidParameterError(
                f"value count {v.shape} does not match grid node count {self.grid.nodes.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidParameterError("grid function values must all be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: RadialGrid, fn) -> "GridFunction":
        return cls(grid, np.asarray(fn(grid.nodes), dtype=float))

    @classmethod
    def zeros(cls, grid: RadialGrid) -> "GridFunction":
        return cls(grid, np.zeros_like(grid.nodes))

    def interp(self, r: float) -> float:
        """Linear interpolation in the s-coordinate."""
        s = -np.log(self.grid.nodes)
        # s decreases along the node order; np.interp needs increasing x
        return float(np.interp(-np.log(r), s[::-1], self.values[::-1]))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_csv(self, path) -> None:
        """Write the profile as CSV with header ``r,value``, radii ascending,
        17 significant digits."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        buf.write("r,value\n")
        for r, v in zip(self.grid.nodes, self.values):
            buf.write(f"{r:.17g},{v:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, path) -> "GridFunction":
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        r, v = data[:, 0], data[:, 1]
        if r.size < 3 or np.any(np.diff(r) <= 0):
            raise InvalidParameterError("profile CSV must list at least 3 strictly ascending radii")
        s = np.log(r)
        ds = np.diff(s)
        if np.max(np.abs(ds - ds[0])) > 1e-10:
            raise InvalidParameterError("profile CSV radii are not uniform in ln r")
        grid = RadialGrid(r_min=float(r[0]), n=int(r.size - 2), nodes=r, h=float(ds[0]))
        return cls(grid, v)


def _require_finite(u: GridFunction):
    if not np.all(np.isfinite(u.values)):
        raise NumericError("non-finite values in grid function")


def apply_L(params: HardyParams, u: GridFunction) -> GridFunction:
    """Discrete residual of ``-u'' - (N-1)u'/r + mu u/r^2`` at interior nodes.

    Second-order central differences in the s-coordinate; boundary nodes
    carry 0.
    """
    _require_finite(u)
    g = u.grid
    v = u.values
    h = g.h
    out = np.zeros_like(v)
    uss = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h**2
    us = (v[:-2] - v[2:]) / (2.0 * h)  # s increases toward smaller r
    out[1:-1] = (-uss + (params.N - 2) * us + params.mu * v[1:-1]) / g.interior**2
    return GridFunction(g, out)


def apply_L_star(params: HardyParams, xi: GridFunction) -> GridFunction:
    """Discrete residual of the adjoint drift operator
    ``-xi'' - (N-1+2 tau_plus) xi'/r`` at interior nodes.

    This is the operator felt by test functions in the weighted
    distributional pairing; it has no zeroth-order term.
    """
    _require_finite(xi)
    g = xi.grid
    v = xi.values
    h = g.h
    sc = spectral_constants(params)
    a = params.N - 2 + 2.0 * sc.tau_plus
    out = np.zeros_like(v)
    uss = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h**2
    us = (v[:-2] - v[2:]) / (2.0 * h)
    out[1:-1] = (-uss + a * us) / g.interior**2
    return GridFunction(g, out)


def dmu_weights(params: HardyParams, grid: RadialGrid) -> np.ndarray:
    """Nodal quadrature weights realising the weighted-measure integral.

    Trapezoid in s with the r ds Jacobian: node i carries
    ``theta_i h r_i measure_weight(r_i)`` with theta = 1/2 at the two ends.
    """
    w = measure_weight(params, grid.nodes) * grid.nodes * grid.h
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def integrate_dmu(params: HardyParams, f: GridFunction) -> float:
    """Trapezoidal quadrature of ``f`` against the weighted measure on
    [r_min, 1]."""
    _require_finite(f)
    w = dmu_weights(params, f.grid)
    return float(np.dot(w, f.values))


def lebesgue_weights(params: HardyParams, grid: RadialGrid) -> np.ndarray:
    """Nodal weights for the plain volume integral ``|S| r^{N-1} dr``."""
    w = (
        spectral_constants(params).sphere_area
        * grid.nodes ** float(params.N)
        * grid.h
    )
    w[0] *= 0.5
    w[-1] *= 0.5
    return w
