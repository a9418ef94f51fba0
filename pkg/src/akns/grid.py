"""Composite Gauss-Legendre quadrature on (0, 1) with exact parity about x = 1/2.

Grids are built from mirror-symmetric breakpoints, so reversing the node
array maps ``x`` to ``1 - x`` exactly.  Besides plain integration the grid
provides cumulative weighted integrals

    head(f, m)(x_i) = int_0^{x_i} t^m f(t) dt,
    tail(f, m)(x_i) = int_{x_i}^1 t^{-m} f(t) dt,

which are the building blocks of every Volterra-type operator in the
package.  On the panel touching t = 0 the power weight is integrated
exactly against a low-degree fit of f, so the singular factor never gets
interpolated.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Union

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy.interpolate import PchipInterpolator

__all__ = [
    "GridAsymmetryError",
    "QuadGrid",
    "SampledFunction",
    "integrate",
    "parity_split",
    "legendre_coeffs",
    "legendre_eval",
    "legendre_ensemble",
    "read_csv_table",
    "read_csv_function",
]


class GridAsymmetryError(ValueError):
    """Raised when a parity operation is requested on a non-mirrored grid."""


@lru_cache(maxsize=None)
def _gauss(n: int):
    t, w = npleg.leggauss(n)
    # running integrals of the Lagrange basis: C[i, j] = int_{-1}^{t_i} l_j
    V = npleg.legvander(t, n - 1)
    Vinv = np.linalg.inv(V)
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        cols.append(npleg.legval(t, npleg.legint(e, lbnd=-1)))
    C = np.column_stack(cols) @ Vinv
    return t, w, C


@dataclass(frozen=True, eq=False)
class QuadGrid:
    """Composite Gauss-Legendre rule on mirror-symmetric panels.

    Attributes
    ----------
    breaks : ndarray
        Panel endpoints ``0 = b_0 < ... < b_P = 1``.
    nodes_per_panel : int
    nodes, weights : ndarray
    """

    breaks: np.ndarray
    nodes_per_panel: int
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    symmetric: bool = field(init=False)

    def __post_init__(self):
        b = np.asarray(self.breaks, dtype=float)
        if b[0] != 0.0 or b[-1] != 1.0 or np.any(np.diff(b) <= 0):
            raise ValueError("breaks must increase from 0 to 1")
        t, w, _ = _gauss(self.nodes_per_panel)
        a, h = b[:-1, None], np.diff(b)[:, None]
        x = (a + 0.5 * h * (t + 1.0)).ravel()
        wt = (0.5 * h * w).ravel()
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", wt)
        sym = np.allclose(b[::-1], 1.0 - b, rtol=0, atol=1e-15)
        object.__setattr__(self, "symmetric", bool(sym))
        if sym:
            # enforce the mirror relation bit-for-bit on the upper half
            n = len(x)
            x2 = x.copy()
            x2[n - n // 2:] = 1.0 - x[: n // 2][::-1]
            object.__setattr__(self, "nodes", x2)
            wt2 = 0.5 * (wt + wt[::-1])
            object.__setattr__(self, "weights", wt2)
        for arr in (self.nodes, self.weights, self.breaks):
            arr.setflags(write=False)

    # -- constructors -----------------------------------------------------
    @classmethod
    def uniform(cls, panels: int = 64, nodes_per_panel: int = 12) -> "QuadGrid":
        """Equal panels; the default 64 x 12 rule has 768 nodes."""
        return cls(np.linspace(0.0, 1.0, panels + 1), nodes_per_panel)

    @classmethod
    def graded(cls, panels: int = 32, levels: int = 40, nodes_per_panel: int = 16,
               ratio: float = 0.5) -> "QuadGrid":
        """Uniform interior panels plus geometric refinement toward 0 and 1.

        The first interior panel ``[0, 1/panels]`` is split ``levels`` times
        with the given ratio, and the same layout is mirrored at x = 1.
        """
        h = 1.0 / panels
        left = h * ratio ** np.arange(levels, 0, -1)
        inner = np.linspace(h, 1.0 - h, panels - 1)
        b = np.concatenate([[0.0], left, inner, 1.0 - left[::-1], [1.0]])
        return cls(b, nodes_per_panel)

    # -- basic properties -------------------------------------------------
    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def panels(self) -> int:
        return self.breaks.size - 1

    def __len__(self):
        return self.size

    def sample(self, f: Callable) -> "SampledFunction":
        return SampledFunction(self, np.asarray(f(self.nodes), dtype=float))

    def values(self, f) -> np.ndarray:
        """Node values of a callable, a SampledFunction, or an array."""
        if isinstance(f, SampledFunction):
            if f.grid is not self:
                raise ValueError("SampledFunction lives on a different grid")
            return f.values
        if callable(f):
            return np.broadcast_to(np.asarray(f(self.nodes), dtype=float), self.nodes.shape).copy()
        v = np.asarray(f, dtype=float)
        if v.shape[-1] != self.size:
            raise ValueError(f"expected {self.size} node values, got shape {v.shape}")
        return v

    # -- quadrature --------------------------------------------------------
    def integrate(self, values) -> np.ndarray:
        """Integral over (0, 1); works on the last axis of an array."""
        return np.asarray(values) @ self.weights

    def inner(self, f, g) -> float:
        return float(self.integrate(self.values(f) * self.values(g)))

    def norm(self, f) -> float:
        v = self.values(f)
        return float(np.sqrt(self.integrate(v * v)))

    def mirror(self, values) -> np.ndarray:
        """Node values of ``x -> f(1 - x)``."""
        if not self.symmetric:
            raise GridAsymmetryError("grid is not mirror-symmetric about x = 1/2")
        return np.asarray(values)[..., ::-1]

    # -- cumulative integrals ---------------------------------------------
    def _blocks(self, values):
        v = np.asarray(values, dtype=float)
        return v.reshape(v.shape[:-1] + (self.panels, self.nodes_per_panel))

    def _fit_first_panel(self, vals, deg, log_deg):
        # least squares on [0, b1] in s^k (k <= deg) and s^k ln s (k <= log_deg), s = t / b1
        b1 = self.breaks[1]
        s = self.nodes[: self.nodes_per_panel] / b1
        V = np.concatenate([s[:, None] ** np.arange(deg + 1),
                            s[:, None] ** np.arange(log_deg + 1) * np.log(s)[:, None]], axis=1)
        flat = np.moveaxis(vals, -1, 0).reshape(len(s), -1)
        coef, *_ = np.linalg.lstsq(V, flat, rcond=None)
        return coef.reshape((V.shape[1],) + vals.shape[:-1]), b1

    def _weights(self, m: float):
        """Per-panel product weights for the weight ``t^m``.

        Returns ``(W, T)`` with ``W[p, i, j] = int_{a_p}^{x_i} t^m l_j(t) dt``
        and ``T[p, j] = int_{a_p}^{b_p} t^m l_j(t) dt``, where ``l_j`` are the
        Lagrange polynomials of panel ``p``.  A 48-point sub-rule makes these
        exact to rounding for panels not touching the origin.
        """
        cache = self.__dict__.setdefault("_wcache", {})
        key = float(m)
        if key in cache:
            return cache[key]
        n = self.nodes_per_panel
        t, _, _ = _gauss(n)
        Vinv = np.linalg.inv(npleg.legvander(t, n - 1))
        u, wu = npleg.leggauss(48)
        a = self.breaks[:-1][:, None]
        b = self.breaks[1:][:, None]
        h = b - a
        xi = self.nodes.reshape(self.panels, n)
        ends = np.concatenate([xi, b], axis=1)  # (P, n+1)
        s = a[:, :, None] + (ends - a)[:, :, None] * 0.5 * (u + 1.0)  # (P, n+1, 48)
        tau = 2.0 * (s - a[:, :, None]) / h[:, :, None] - 1.0
        L = npleg.legvander(tau, n - 1) @ Vinv  # (P, n+1, 48, n)
        with np.errstate(divide="ignore", invalid="ignore"):
            wt = np.where(s > 0, s ** m, 0.0) * wu * 0.5 * (ends - a)[:, :, None]
        full = np.einsum("pkq,pkqj->pkj", wt, L)
        W, T = full[:, :n, :], full[:, n, :]
        cache[key] = (W, T)
        return W, T

    def head(self, values, m: float = 0.0, deg: int = 7, log_deg: int = 3) -> np.ndarray:
        """``int_0^{x_i} t^m f(t) dt`` at every node (``m >= 0``).

        On the first panel ``f`` is fitted by ``s^k`` (``k <= deg``) and
        ``s^k ln s`` (``k <= log_deg``), ``s = t / b1``, and integrated in
        closed form.  Without the log terms, functions like ``1 + 2 ln x``
        lose accuracy there, and operators that divide the head integral by
        a power of x carry that error to the rest of the grid.
        """
        v = np.asarray(values, dtype=float)
        n = self.nodes_per_panel
        W, T = self._weights(m)
        g = self._blocks(v)
        partial = np.einsum("pij,...pj->...pi", W, g)
        totals = np.einsum("pj,...pj->...p", T, g)
        coef, b1 = self._fit_first_panel(v[..., :n], deg, log_deg)
        k = np.arange(deg + 1)
        kl = np.arange(log_deg + 1)
        # int_0^x t^m s^k dt = x^a / (a b1^k), a = m + k + 1, plus the log analogue
        ends = np.append(self.nodes[:n], b1)
        a = m + k + 1.0
        al = m + kl + 1.0
        P = ends[:, None] ** a / a / b1 ** k
        L = ends[:, None] ** al / al * (np.log(ends / b1)[:, None] - 1.0 / al) / b1 ** kl
        basis = np.concatenate([P, L], axis=1)  # (n+1, nbasis)
        first = np.moveaxis(np.tensordot(basis, coef, axes=([1], [0])), 0, -1)
        partial[..., 0, :] = first[..., :n]
        totals[..., 0] = first[..., n]
        offset = np.cumsum(totals, axis=-1) - totals
        return (partial + offset[..., None]).reshape(v.shape)

    def tail(self, values, m: float = 0.0, deg: int = 7, log_deg: int = 3) -> np.ndarray:
        """``int_{x_i}^1 t^{-m} f(t) dt`` at every node (``m >= 0``).

        On the first panel the weight is integrated in closed form against the
        same ``s^k``, ``s^k ln s`` fit used by :meth:`head`.
        """
        v = np.asarray(values, dtype=float)
        n = self.nodes_per_panel
        W, T = self._weights(-m)
        g = self._blocks(v)
        partial = np.einsum("pij,...pj->...pi", W, g)
        totals = np.einsum("pj,...pj->...p", T, g)
        totals[..., 0] = 0.0  # singular panel, handled below
        after = np.cumsum(totals[..., ::-1], axis=-1)[..., ::-1] - totals
        out = (totals[..., None] - partial) + after[..., None]
        coef, b1 = self._fit_first_panel(v[..., :n], deg, log_deg)
        xi = self.nodes[:n]
        r = np.log(xi / b1)[:, None]  # ln s at the nodes, <= 0
        # int_x^{b1} t^{-m} s^k dt and int_x^{b1} t^{-m} s^k ln s dt, s = t / b1
        cols = []
        for k, with_log in [(k, False) for k in range(deg + 1)] + [(k, True) for k in range(log_deg + 1)]:
            e = k - m + 1.0
            if abs(e) < 1e-12:
                val = -0.5 * r[:, 0] ** 2 if with_log else -r[:, 0]
            else:
                up = b1 ** e / e
                lo = xi ** e / e
                val = (-up / e - lo * (r[:, 0] - 1.0 / e)) if with_log else (up - lo)
            cols.append(val / b1 ** k)
        basis = np.stack(cols, axis=1)
        first = np.moveaxis(np.tensordot(basis, coef, axes=([1], [0])), 0, -1)
        out[..., 0, :] = first + after[..., 0, None]
        return out.reshape(v.shape)

    def primitive(self, values) -> np.ndarray:
        """``int_0^{x_i} f``; alias of ``head(f, 0)``."""
        return self.head(values, 0.0)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Node values of a function on a QuadGrid."""

    grid: QuadGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.nodes.shape:
            raise ValueError(f"expected {self.grid.size} values, got {v.shape}")
        object.__setattr__(self, "values", v)

    def __add__(self, other):
        return SampledFunction(self.grid, self.values + self.grid.values(other))

    def __sub__(self, other):
        return SampledFunction(self.grid, self.values - self.grid.values(other))

    def __mul__(self, c):
        if isinstance(c, SampledFunction):
            return SampledFunction(self.grid, self.values * c.values)
        return SampledFunction(self.grid, self.values * c)

    __rmul__ = __mul__

    def __neg__(self):
        return SampledFunction(self.grid, -self.values)

    def norm(self) -> float:
        return self.grid.norm(self.values)


def integrate(f: SampledFunction) -> float:
    """Quadrature of a sampled function over (0, 1)."""
    if f.values.size == 0:
        raise ValueError("empty function")
    return float(f.grid.integrate(f.values))


def parity_split(f: SampledFunction):
    """Even and odd parts of ``f`` about x = 1/2, exact on the nodes."""
    g = f.grid
    if not g.symmetric:
        raise GridAsymmetryError("grid is not mirror-symmetric about x = 1/2")
    r = g.mirror(f.values)
    return SampledFunction(g, 0.5 * (f.values + r)), SampledFunction(g, 0.5 * (f.values - r))


def legendre_coeffs(count: int, degree: int = 8, seed: int = 42,
                    parity: str | None = None) -> np.ndarray:
    """Seeded coefficients, shape ``(count, degree)``, in the shifted Legendre basis.

    The basis is orthonormal on (0, 1): ``sqrt(2k+1) P_k(2x - 1)``.
    ``parity='even'`` or ``'odd'`` keeps only the degrees with that symmetry
    about x = 1/2.
    """
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((count, degree))
    if parity == "even":
        c[:, 1::2] = 0.0
    elif parity == "odd":
        c[:, 0::2] = 0.0
    elif parity is not None:
        raise ValueError("parity must be None, 'even' or 'odd'")
    return c


def legendre_eval(coeffs, x) -> np.ndarray:
    """Evaluate ``sum_k c_k sqrt(2k+1) P_k(2x - 1)``; ``coeffs`` may be 2-D."""
    c = np.atleast_2d(np.asarray(coeffs, dtype=float))
    c = c * np.sqrt(2 * np.arange(c.shape[-1]) + 1.0)
    x = np.asarray(x, dtype=float)
    out = npleg.legval(2.0 * x - 1.0, c.T)
    return out[0] if np.ndim(coeffs) == 1 else out


def legendre_ensemble(grid_or_x, count: int, degree: int = 8, seed: int = 42,
                      parity: str | None = None) -> np.ndarray:
    """Node values, shape ``(count, len(x))``, of :func:`legendre_coeffs` draws."""
    x = grid_or_x.nodes if isinstance(grid_or_x, QuadGrid) else np.asarray(grid_or_x)
    c = legendre_coeffs(count, degree, seed, parity)
    if count == 0:
        return np.zeros((0, x.size))
    return np.asarray(legendre_eval(c, x)).reshape(count, -1)


def read_csv_table(path: Union[str, Path]):
    """Numeric CSV rows sorted by the first column; a header line is skipped.

    Returns ``(x, cols)`` with ``cols`` of shape ``(ncols - 1, len(x))``.
    """
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                if not rows:
                    continue
                raise ValueError(f"{path}: non-numeric row {row!r}") from None
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two samples")
    if len({len(r) for r in rows}) != 1 or len(rows[0]) < 2:
        raise ValueError(f"{path}: ragged or single-column table")
    a = np.asarray(rows)
    a = a[np.argsort(a[:, 0])]
    if np.any(np.diff(a[:, 0]) <= 0):
        raise ValueError(f"{path}: duplicate x values")
    return a[:, 0], a[:, 1:].T


def read_csv_function(path: Union[str, Path], column: int = 1) -> Callable:
    """Monotone cubic interpolant of column ``column`` against column 0."""
    x, cols = read_csv_table(path)
    if column < 1 or column > cols.shape[0]:
        raise ValueError(f"{path}: no column {column}")
    return PchipInterpolator(x, cols[column - 1], extrapolate=True)
