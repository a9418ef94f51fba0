"""Half-integer Bessel functions, their zeros and the polynomial families P, Q, A.

All Bessel evaluations use the elementary closed forms available for orders
``m + 1/2``.  Near the origin, where the closed forms cancel badly, the
ascending series is used instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "DomainError",
    "ConvergenceError",
    "HalfIntOrder",
    "PolyPair",
    "APoly",
    "BesselZeroTable",
    "pq_polys",
    "a_poly",
    "jhalf",
    "yhalf",
    "bessel_j",
    "bessel_y",
    "bessel_zero",
    "bessel_zeros",
    "zero_table",
    "series_j",
]


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to converge."""


@dataclass(frozen=True)
class HalfIntOrder:
    """The pair (kappa, nu) with ``nu = kappa + 1/2``."""

    kappa: int

    def __post_init__(self):
        if int(self.kappa) != self.kappa or self.kappa < 0:
            raise DomainError(f"kappa must be a non-negative integer, got {self.kappa}")
        object.__setattr__(self, "kappa", int(self.kappa))

    @property
    def nu(self) -> Fraction:
        return Fraction(2 * self.kappa + 1, 2)

    @property
    def nu_float(self) -> float:
        return self.kappa + 0.5


def _order(order) -> HalfIntOrder:
    return order if isinstance(order, HalfIntOrder) else HalfIntOrder(order)


# ---------------------------------------------------------------------------
# polynomial families (exact rational coefficients, ascending powers of t)

def _padd(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _pscale(a, c):
    return [c * x for x in a]


def _pshift(a, k=1):
    return [Fraction(0)] * k + list(a)


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


@dataclass(frozen=True)
class PolyPair:
    """Coefficients of ``P_kappa(t)`` and ``Q_{kappa-1}(t)`` (ascending)."""

    kappa: int
    p_coeffs: tuple
    q_coeffs: tuple


@dataclass(frozen=True)
class APoly:
    """Coefficients of ``A_kappa(t)`` (ascending)."""

    kappa: int
    coeffs: tuple


@lru_cache(maxsize=None)
def _p_seq(k: int):
    # P_{k+1} = (2k+1) t P_k - P_{k-1}
    if k == 0:
        return (Fraction(1),)
    if k == 1:
        return (Fraction(0), Fraction(1))
    pk, pk1 = _p_seq(k - 1), _p_seq(k - 2)
    return _trim(_padd(_pshift(_pscale(pk, Fraction(2 * k - 1))), _pscale(pk1, -1)))


@lru_cache(maxsize=None)
def _q_seq(k: int):
    # Q_{k+1} = (2k+3) t Q_k - Q_{k-1}, Q_{-1} = 0, Q_0 = 1
    if k == -1:
        return (Fraction(0),)
    if k == 0:
        return (Fraction(1),)
    qk, qk1 = _q_seq(k - 1), _q_seq(k - 2)
    return _trim(_padd(_pshift(_pscale(qk, Fraction(2 * k + 1))), _pscale(qk1, -1)))


def pq_polys(kappa: int) -> PolyPair:
    """Exact coefficients of ``P_kappa`` and ``Q_{kappa-1}``.

    Examples
    --------
    >>> pq = pq_polys(2)
    >>> [str(c) for c in pq.p_coeffs], [str(c) for c in pq.q_coeffs]
    (['-1', '0', '3'], ['0', '3'])
    """
    kappa = _order(kappa).kappa
    return PolyPair(kappa, _p_seq(kappa), _q_seq(kappa - 1))


@lru_cache(maxsize=None)
def _a_seq(k: int):
    # A_{k+1} = (2k+1) A_k + (t^2/4) A_{k-1}
    if k == 0:
        return (Fraction(1),)
    if k == 1:
        return (Fraction(1), Fraction(-1, 2))
    ak, ak1 = _a_seq(k - 1), _a_seq(k - 2)
    return _trim(_padd(_pscale(ak, Fraction(2 * k - 1)), _pshift(_pscale(ak1, Fraction(1, 4)), 2)))


def a_poly(kappa: int) -> APoly:
    """Exact coefficients of ``A_kappa``, e.g. ``A_2 = t^2/4 - 3t/2 + 3``."""
    kappa = _order(kappa).kappa
    return APoly(kappa, _a_seq(kappa))


def _polyval(coeffs, t):
    return np.polynomial.polynomial.polyval(t, np.array([float(c) for c in coeffs]))


# ---------------------------------------------------------------------------
# Bessel functions of half-integer order

def series_j(alpha: float, z, rtol: float = 1e-18, max_terms: int = 200):
    """Ascending series of ``J_alpha(z)`` for real ``alpha`` and ``z > 0``."""
    z = np.asarray(z, dtype=float)
    half = 0.5 * z
    term = half ** alpha / math.gamma(alpha + 1.0)
    total = term.copy() if isinstance(term, np.ndarray) else np.array(term)
    q = -half * half
    for k in range(1, max_terms):
        term = term * q / (k * (k + alpha))
        total = total + term
        if np.all(np.abs(term) <= rtol * np.abs(total)):
            break
    return total


def _series_cutoff(m: int) -> float:
    # below this argument the closed form of J_{m+1/2}, m >= 1, loses more
    # digits than the ascending series does
    return 0.05 if m <= 0 else 0.05 + m


def jhalf(m: int, z):
    """``J_{m+1/2}(z)`` for any integer ``m`` and ``z > 0``."""
    z_in = z
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("Bessel functions are evaluated for z > 0 only")
    pre = np.sqrt(2.0 / (np.pi * z))
    t = 1.0 / z
    s, c = np.sin(z), np.cos(z)
    if m >= 0:
        pq = pq_polys(m)
        out = pre * (_polyval(pq.p_coeffs, t) * s - _polyval(pq.q_coeffs, t) * c)
    else:
        k = -m - 1
        pq = pq_polys(k)
        out = (-1) ** k * pre * (_polyval(pq.p_coeffs, t) * c + _polyval(pq.q_coeffs, t) * s)
    small = z < _series_cutoff(m)
    if np.any(small):
        out = np.where(small, series_j(m + 0.5, np.where(small, z, 1.0)), out)
    return float(out) if np.ndim(z_in) == 0 else out


def yhalf(m: int, z):
    """``Y_{m+1/2}(z) = (-1)^{m+1} J_{-m-1/2}(z)``."""
    return (-1) ** (m + 1) * jhalf(-m - 1, z)


def bessel_j(order, sign: str, z):
    """``J_{+nu}(z)`` or ``J_{-nu}(z)`` with ``nu = kappa + 1/2``.

    Parameters
    ----------
    order : HalfIntOrder or int
    sign : {'+', '-'}
    z : float or array, positive
    """
    k = _order(order).kappa
    if sign == "+":
        return jhalf(k, z)
    if sign == "-":
        return jhalf(-k - 1, z)
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def bessel_y(order, z):
    """``Y_nu(z)`` via the reflection identity for half-integer order."""
    return yhalf(_order(order).kappa, z)


# ---------------------------------------------------------------------------
# zeros

def _dj(k: int, z):
    # J'_nu = J_{nu-1} - (nu/z) J_nu
    return jhalf(k - 1, z) - (k + 0.5) / z * jhalf(k, z)


def bessel_zeros(order, N: int, start: int = 1) -> np.ndarray:
    """Zeros ``j_{nu,n}`` for ``n = start .. start+N-1``.

    Safeguarded Newton from the McMahon estimate ``(n + nu/2 - 1/4) pi``; the
    bracket ``((n - 1 + nu/2 + 1/4) pi, (n + nu/2 + 1/4) pi)`` contains exactly
    one zero, and any entry that leaves it is finished with Brent's method.
    """
    k = _order(order).kappa
    nu = k + 0.5
    n = np.arange(start, start + N, dtype=float)
    if N <= 0:
        return np.zeros(0)
    lo = (n - 1 + nu / 2 + 0.25) * np.pi
    hi = (n + nu / 2 + 0.25) * np.pi
    if start == 1:
        lo[0] = max(lo[0], 1e-3)
    z = (n + nu / 2 - 0.25) * np.pi
    ok = np.zeros(N, bool)
    for _ in range(60):
        f = jhalf(k, z)
        step = f / _dj(k, z)
        z_new = z - step
        bad = (z_new <= lo) | (z_new >= hi) | ~np.isfinite(z_new)
        z = np.where(bad, z, z_new)
        ok = ~bad & (np.abs(step) <= 4e-16 * np.abs(z))
        if np.all(ok | bad):
            break
    todo = np.nonzero(~ok)[0]
    for i in todo:
        fl, fh = jhalf(k, lo[i]), jhalf(k, hi[i])
        if fl * fh > 0:
            raise ConvergenceError(
                f"no sign change for zero n={int(n[i])} of J_{nu} on bracket "
                f"({lo[i]:.6g}, {hi[i]:.6g}): J = ({fl:.3e}, {fh:.3e})"
            )
        z[i] = brentq(lambda s: jhalf(k, s), lo[i], hi[i], xtol=1e-15, rtol=4e-16)
    return z


def bessel_zero(order, n: int) -> float:
    """The n-th positive zero of ``J_nu``."""
    if n < 1:
        raise DomainError("zero index n must be >= 1")
    return float(bessel_zeros(order, 1, start=n)[0])


@dataclass(frozen=True)
class BesselZeroTable:
    """First N positive zeros of ``J_nu`` (read-only array)."""

    order: HalfIntOrder
    zeros: np.ndarray

    def __len__(self):
        return len(self.zeros)


@lru_cache(maxsize=32)
def _zero_table(kappa: int, N: int) -> BesselZeroTable:
    z = bessel_zeros(kappa, N)
    z.setflags(write=False)
    return BesselZeroTable(HalfIntOrder(kappa), z)


def zero_table(order, N: int) -> BesselZeroTable:
    """Cached table of the first N zeros; shares storage between callers."""
    return _zero_table(_order(order).kappa, int(N))
