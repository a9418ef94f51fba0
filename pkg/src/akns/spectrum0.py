"""Spectrum, eigenfunctions and normalization constants of the free operator.

At zero potential the eigenvalues are ``0`` and ``+-j_{nu,n}``, with
eigenfunctions ``c sqrt(lambda x) (J_{nu-1}(lambda x), -J_nu(lambda x))`` and
zero mode ``sqrt(2 kappa + 1) (x^kappa, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import HalfIntOrder, jhalf, zero_table, _order

__all__ = [
    "SpectralSlice",
    "EigenFn0",
    "eigenvalues0",
    "normconst",
    "normconst_asymptotic",
    "eigenfunction0",
    "asymptote",
    "lommel_gap",
    "normconst_slope",
]


@dataclass(frozen=True)
class SpectralSlice:
    """Eigenvalues ``lambda_n`` for ``n = -N .. N`` (index ``n + N``)."""

    order: HalfIntOrder
    N: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2 * self.N + 1,):
            raise ValueError(f"expected {2 * self.N + 1} values, got {v.shape}")
        if np.any(np.diff(v) <= 0):
            raise ValueError("eigenvalues must be strictly increasing in n")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n: int) -> float:
        if abs(n) > self.N:
            raise IndexError(n)
        return float(self.values[n + self.N])

    def to_dict(self):
        return {"kappa": self.order.kappa, "nu": float(self.order.nu),
                "n": self.n.tolist(), "eigenvalues": self.values.tolist()}


def asymptote(order, n):
    """Labelling asymptote ``(n + sgn(n) kappa / 2) pi``."""
    k = _order(order).kappa
    n = np.asarray(n)
    return (n + np.sign(n) * k / 2.0) * np.pi


def eigenvalues0(order, N: int = 40) -> SpectralSlice:
    """``(-j_N, ..., -j_1, 0, j_1, ..., j_N)``."""
    order = _order(order)
    if N < 1:
        raise ValueError("N must be >= 1")
    j = np.asarray(zero_table(order, N).zeros)
    return SpectralSlice(order, N, np.concatenate([-j[::-1], [0.0], j]))


def normconst(order, n: int) -> float:
    """``c_{kappa,n} = 1 / (sqrt(j) |J_{nu+1}(j)|)``; ``c_{kappa,0} = sqrt(2 kappa + 1)``."""
    order = _order(order)
    k = order.kappa
    n = abs(int(n))
    if n == 0:
        return float(np.sqrt(2 * k + 1))
    j = float(zero_table(order, max(n, 40)).zeros[n - 1])
    return float(1.0 / (np.sqrt(j) * abs(jhalf(k + 1, j))))


def normconst_asymptotic(order, n):
    """Two-term expansion ``pi/2 + (4 nu^2 - 1) / (16 pi (n + nu/2 - 1/4)^2)`` of ``c^2``."""
    nu = _order(order).nu_float
    n = np.asarray(n, dtype=float)
    return np.pi / 2 + (4 * nu * nu - 1) / (16 * np.pi * (n + nu / 2 - 0.25) ** 2)


@dataclass(frozen=True)
class EigenFn0:
    """Normalized eigenfunction of the free operator, evaluable anywhere in [0, 1]."""

    order: HalfIntOrder
    n: int
    c: float
    lam: float

    def z1(self, x):
        x = np.asarray(x, dtype=float)
        if self.n == 0:
            return self.c * x ** self.order.kappa
        return self.c * _sqrt_j(self.order.kappa - 1, self.lam * x)

    def z2(self, x):
        x = np.asarray(x, dtype=float)
        if self.n == 0:
            return np.zeros_like(x)
        return -self.c * _sqrt_j(self.order.kappa, self.lam * x)

    def __call__(self, x):
        return np.stack([self.z1(x), self.z2(x)])


def _sqrt_j(m, s):
    # sqrt(s) J_{m+1/2}(s) continued to s <= 0: it is s^{m+1} times an even
    # function, so parity (-1)^{m+1}; at s = 0 it is sqrt(2/pi) for m = -1, else 0
    s = np.asarray(s, dtype=float)
    a = np.abs(s)
    out = np.full(a.shape, np.sqrt(2 / np.pi) if m == -1 else 0.0)
    pos = a > 0
    if np.any(pos):
        out[pos] = np.sqrt(a[pos]) * jhalf(m, a[pos])
    return np.where(s < 0, (-1.0) ** (m + 1), 1.0) * out


def eigenfunction0(order, n: int) -> EigenFn0:
    """Eigenfunction for ``lambda_{kappa,n}(0, 0)``.

    For ``n < 0`` the eigenvalue is ``-j`` and the same formula holds with
    ``lambda x`` negative; ``sqrt(lambda x) J(lambda x)`` is continued by
    parity.
    """
    order = _order(order)
    n = int(n)
    c = normconst(order, n)
    if n == 0:
        return EigenFn0(order, 0, c, 0.0)
    j = float(zero_table(order, max(abs(n), 40)).zeros[abs(n) - 1])
    return EigenFn0(order, n, c, float(np.sign(n)) * j)


def lommel_gap(order, n: int, grid=None) -> float:
    """``|int_0^1 x J_nu(j x)^2 dx - J_{nu+1}(j)^2 / 2|`` by quadrature."""
    from .grid import QuadGrid

    order = _order(order)
    g = grid if grid is not None else QuadGrid.uniform()
    k = order.kappa
    j = float(zero_table(order, max(n, 40)).zeros[n - 1])
    x = g.nodes
    lhs = g.integrate(x * jhalf(k, j * x) ** 2)
    return float(abs(lhs - 0.5 * jhalf(k + 1, j) ** 2))


def normconst_slope(order, n_lo: int = 10, n_hi: int = 40):
    """Log-log slope of ``|c_n^2 - asymptotic(n)|`` over ``n_lo..n_hi``.

    Returns ``(slope, residuals)``.  For kappa = 0 the two-term expansion is
    exact and the residuals are rounding noise, so the slope carries no
    information there.
    """
    n = np.arange(n_lo, n_hi + 1)
    c2 = np.array([normconst(order, i) ** 2 for i in n])
    r = np.abs(c2 - normconst_asymptotic(order, n))
    slope = float(np.polyfit(np.log(n), np.log(r), 1)[0])
    return slope, r
