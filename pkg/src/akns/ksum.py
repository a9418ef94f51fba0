"""Kneser-Sommerfeld-type series over the zeros of ``J_nu``.

Each identity equates a series over ``j_n = j_{nu,n}`` with a closed form in
Bessel functions of ``z``.  Partial sums are accumulated exactly rounded
(``math.fsum``), smallest terms first, and ``J_nu'(j_n)`` is taken as
``J_{nu-1}(j_n)``, its value at a zero.

Identities (``0 < x <= X <= 1``):

``classic``    sum J_nu(j x) J_nu(j X) / ((z^2 - j^2) J'^2)
``nu_one``     sum J_{nu-1}(j x) J_{nu-1}(j X) / ((z^2 - j^2) J'^2)
``mixed_xX``   sum J_{nu-1}(j x) J_nu(j X) / ((z^2 - j^2) j J'^2)
``mixed_Xx``   sum J_{nu-1}(j X) J_nu(j x) / ((z^2 - j^2) j J'^2)
``corollary``  sum x J_{nu-1}(j x) J_nu(j x) / ((z^2 - j^2) j J'^2)
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .specfun import DomainError, jhalf, yhalf, zero_table, _order

__all__ = [
    "IDENTITIES",
    "PoleProximityError",
    "KSEvaluation",
    "ks_terms",
    "ks_rhs",
    "ks_eval",
    "ks_rate",
    "ks_pole_check",
    "ks_symmetry_gap",
    "draw_parameters",
]

IDENTITIES = ("classic", "nu_one", "mixed_xX", "mixed_Xx", "corollary")


class PoleProximityError(DomainError):
    """``z`` is too close to a zero of ``J_nu``."""


@dataclass(frozen=True)
class KSEvaluation:
    identity_id: str
    nu: float
    x: float
    X: float
    z: float
    N: int
    lhs: float
    rhs: float
    gap: float
    tail_estimate: float

    def to_dict(self):
        return asdict(self)


def _check(identity_id, x, X, z):
    if identity_id not in IDENTITIES:
        raise DomainError(f"unknown identity {identity_id!r}; expected one of {IDENTITIES}")
    if identity_id == "corollary":
        X = x
    if not (0 < x <= X <= 1):
        raise DomainError(f"need 0 < x <= X <= 1, got x={x}, X={X}")
    if z == 0:
        raise DomainError("z must be nonzero")
    return X


def _zeros(k, N):
    return np.asarray(zero_table(k, N).zeros)


def ks_terms(identity_id, order, x, X, z, N):
    """The first ``N`` series terms as an array (index ``n - 1``)."""
    k = _order(order).kappa
    X = _check(identity_id, x, X, z)
    j = _zeros(k, N)
    dj2 = jhalf(k - 1, j) ** 2
    den = (z * z - j * j) * dj2
    if identity_id == "classic":
        num = jhalf(k, j * x) * jhalf(k, j * X)
    elif identity_id == "nu_one":
        num = jhalf(k - 1, j * x) * jhalf(k - 1, j * X)
    elif identity_id == "mixed_xX":
        num, den = jhalf(k - 1, j * x) * jhalf(k, j * X), den * j
    elif identity_id == "mixed_Xx":
        num, den = jhalf(k - 1, j * X) * jhalf(k, j * x), den * j
    else:
        num, den = x * jhalf(k - 1, j * x) * jhalf(k, j * x), den * j
    return num / den


def ks_rhs(identity_id, order, x, X, z) -> float:
    """Closed-form right-hand side, algebraic term included."""
    k = _order(order).kappa
    nu = k + 0.5
    X = _check(identity_id, x, X, z)
    z = abs(z)
    Jz, Yz = jhalf(k, z), yhalf(k, z)
    if identity_id == "classic":
        return math.pi / (4 * Jz) * jhalf(k, x * z) * (Jz * yhalf(k, X * z) - Yz * jhalf(k, X * z))
    if identity_id == "nu_one":
        return (-nu / z ** 2 * (x * X) ** (nu - 1)
                + math.pi / (4 * Jz) * jhalf(k - 1, x * z)
                * (Jz * yhalf(k - 1, X * z) - Yz * jhalf(k - 1, X * z)))
    if identity_id == "mixed_xX":
        return (x ** (nu - 1) * (X ** -nu - X ** nu) / (2 * z ** 2)
                + math.pi / (4 * z * Jz) * jhalf(k - 1, x * z)
                * (Jz * yhalf(k, X * z) - Yz * jhalf(k, X * z)))
    if identity_id == "mixed_Xx":
        return (-(x ** nu) * X ** (nu - 1) / (2 * z ** 2)
                + math.pi / (4 * z * Jz) * jhalf(k, x * z)
                * (Jz * yhalf(k - 1, X * z) - Yz * jhalf(k - 1, X * z)))
    a, b = jhalf(k - 1, x * z), jhalf(k, x * z)
    ya, yb = yhalf(k - 1, x * z), yhalf(k, x * z)
    return ((1 - 2 * x ** (2 * nu)) / (4 * z ** 2)
            + math.pi * x / (8 * z * Jz) * (Jz * (a * yb + ya * b) - 2 * Yz * a * b))


def _tail(t, N):
    # envelope C of |t_n| n^2 over the last tenth of the terms; sum_{n>N} C/n^2 ~ C/N
    n = np.arange(1, N + 1)
    m = max(1, N // 10)
    C = float(np.max(np.abs(t[-m:]) * n[-m:] ** 2))
    return C / N


def ks_eval(identity_id, order, x, X, z, N: int = 100_000) -> KSEvaluation:
    """Partial sum of ``N`` terms against the closed form."""
    order = _order(order)
    X = _check(identity_id, x, X, z)
    jN = _zeros(order.kappa, N + 5)
    if np.min(np.abs(abs(z) - jN)) <= 1e-3:
        n = int(np.argmin(np.abs(abs(z) - jN))) + 1
        raise PoleProximityError(f"|z - j_{{nu,{n}}}| <= 1e-3 (z = {z}, j = {jN[n - 1]})")
    t = ks_terms(identity_id, order, x, X, z, N)
    lhs = math.fsum(t[::-1])
    rhs = float(ks_rhs(identity_id, order, x, X, z))
    return KSEvaluation(identity_id, order.nu_float, float(x), float(X), float(z), int(N),
                        float(lhs), rhs, abs(lhs - rhs), _tail(t, N))


def ks_rate(identity_id, order, x, X, z, N_list=(1_000, 10_000, 100_000)) -> dict:
    """Least-squares slope of ``log gap`` against ``log N``."""
    N_list = [int(n) for n in N_list]
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be increasing")
    order = _order(order)
    X = _check(identity_id, x, X, z)
    t = ks_terms(identity_id, order, x, X, z, N_list[-1])
    rhs = float(ks_rhs(identity_id, order, x, X, z))
    gaps = [abs(math.fsum(t[:N][::-1]) - rhs) for N in N_list]
    pos = [g for g in gaps if g > 0]
    if len(pos) == len(gaps) and max(gaps) > 1e-14:
        slope = float(np.polyfit(np.log(N_list), np.log(gaps), 1)[0])
    else:
        slope = float("nan")  # the series is exact already (e.g. x = X = 1)
    return {"identity_id": identity_id, "nu": order.nu_float, "x": x, "X": X, "z": z,
            "N": N_list, "gaps": gaps, "slope": slope,
            "decreasing": bool(all(b <= a for a, b in zip(gaps, gaps[1:])))}


def ks_pole_check(identity_id, order, x, X, dist: float = 1e-2, N: int = 20_000) -> dict:
    """``lhs (z^2 - j_1^2)`` near ``z = j_{nu,1}`` against the first-term residue."""
    order = _order(order)
    X = _check(identity_id, x, X, 1.0)
    j1 = float(_zeros(order.kappa, 1)[0])
    res = float(ks_terms(identity_id, order, x, X, 2 * j1, 1)[0] * (4 * j1 * j1 - j1 * j1))
    out = {}
    for side, z in (("below", j1 - dist), ("above", j1 + dist)):
        lhs = math.fsum(ks_terms(identity_id, order, x, X, z, N)[::-1])
        out[side] = lhs * (z * z - j1 * j1)
    rel = max(abs(v - res) for v in out.values()) / abs(res)
    return {"identity_id": identity_id, "residue": res, **out, "rel_gap": rel}


def ks_symmetry_gap(order, x, z, N: int = 100_000) -> float:
    """``|x/2 (mixed_xX + mixed_Xx) - corollary|`` at ``X = x``, term by term."""
    a = ks_terms("mixed_xX", order, x, x, z, N)
    b = ks_terms("mixed_Xx", order, x, x, z, N)
    c = ks_terms("corollary", order, x, x, z, N)
    return abs(math.fsum((0.5 * x * (a + b))[::-1]) - math.fsum(c[::-1]))


def draw_parameters(identity_id, count: int = 20, seed: int = 42):
    """Seeded ``(kappa, x, X, z)`` draws with ``z`` at least 0.05 from every zero."""
    rng = np.random.default_rng(seed + IDENTITIES.index(identity_id))
    out = []
    while len(out) < count:
        k = int(rng.integers(0, 4))
        a, b = np.sort(rng.uniform(0.05, 1.0, 2))
        if identity_id == "corollary":
            b = a
        z = float(rng.uniform(0.5, 12.0))
        if np.min(np.abs(z - _zeros(k, 10))) < 0.05:
            continue
        out.append((k, float(a), float(b), z))
    return out
