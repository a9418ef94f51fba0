"""Eigenvalues of the radial AKNS operator with a general potential.

The regular solution is shot from the origin in the scaled unknown
``W = Z / x^kappa``, which satisfies

    W1' = -p W1 + (lambda - q) W2
    W2' = -(lambda + q) W1 - (2 kappa / x - p) W2

and is regular at 0 with ``W(0) = (1, 0)``.  Eigenvalues are the zeros of
``lambda -> Z2(1; lambda)``.  Many values of ``lambda`` and many potentials
are integrated together as one vector ODE, with the lambda-derivative
carried along for Newton steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Legendre, Polynomial
from numpy.polynomial import polynomial as P
from scipy.integrate import solve_ivp

from .grid import QuadGrid, read_csv_table
from .specfun import ConvergenceError, _order
from .spectrum0 import SpectralSlice, eigenvalues0

__all__ = [
    "Potential",
    "ShootingState",
    "WindowCaptureError",
    "IntegrationError",
    "rhs",
    "regular_solution",
    "eigenvalues",
    "pauli_sigma3_check",
    "frechet_check",
    "frechet_slice",
    "X0",
]

X0 = 1e-3
RTOL = 1e-12
ATOL = 1e-14


class WindowCaptureError(RuntimeError):
    """A labelling window holds no eigenvalue or more than one."""


class IntegrationError(RuntimeError):
    """The shooting integrator failed."""


def _const(c):
    return lambda x: np.full(np.shape(x), float(c)) if np.ndim(x) else float(c)


def _legendre_to_power(c, scale=1.0):
    c = np.asarray(c, float) * scale * np.sqrt(2 * np.arange(len(c)) + 1.0)
    return Legendre(c, domain=[0.0, 1.0]).convert(kind=Polynomial).coef


def _poly_fn(coef):
    # Horner on Python floats: the shooting RHS evaluates at one x per call
    rev = [float(a) for a in coef[::-1]]
    arr = np.asarray(coef, float)

    def f(x):
        if np.ndim(x):
            return P.polyval(np.asarray(x, float), arr)
        acc = 0.0
        for a in rev:
            acc = acc * x + a
        return acc

    return f


@dataclass(frozen=True)
class Potential:
    """The pair ``(p, q)`` of real functions on (0, 1), as vectorised callables."""

    p: Callable
    q: Callable

    @classmethod
    def zero(cls) -> "Potential":
        return cls(_const(0.0), _const(0.0))

    @classmethod
    def constant(cls, p: float = 0.0, q: float = 0.0) -> "Potential":
        return cls(_const(p), _const(q))

    @classmethod
    def legendre(cls, cp, cq, scale: float = 1.0) -> "Potential":
        """``scale * sum c_k sqrt(2k+1) P_k(2x-1)`` for each component."""
        return cls(_poly_fn(_legendre_to_power(cp, scale)),
                   _poly_fn(_legendre_to_power(cq, scale)))

    @classmethod
    def from_csv(cls, path) -> "Potential":
        """Columns ``x,p,q``; a two-column file ``x,q`` means ``p = 0``."""
        from scipy.interpolate import PchipInterpolator

        x, cols = read_csv_table(path)
        if cols.shape[0] == 1:
            return cls(_const(0.0), PchipInterpolator(x, cols[0]))
        return cls(PchipInterpolator(x, cols[0]), PchipInterpolator(x, cols[1]))

    def scaled(self, s: float) -> "Potential":
        p, q = self.p, self.q
        return Potential(lambda x: s * p(x), lambda x: s * q(x))

    def flip_q(self) -> "Potential":
        """``(p, -q)``."""
        q = self.q
        return Potential(self.p, lambda x: -q(x))

    def sup_norms(self, grid: QuadGrid | None = None):
        g = grid if grid is not None else QuadGrid.uniform()
        x = np.concatenate([[0.0], g.nodes, [1.0]])
        pv = np.broadcast_to(np.asarray(self.p(x), float), x.shape)
        qv = np.broadcast_to(np.asarray(self.q(x), float), x.shape)
        if not (np.all(np.isfinite(pv)) and np.all(np.isfinite(qv))):
            raise ValueError("potential is not finite on [0, 1]")
        return float(np.max(np.abs(pv))), float(np.max(np.abs(qv)))


@dataclass(frozen=True)
class ShootingState:
    """Position and value ``(Z1, Z2)`` of a solution."""

    x: float
    Z: tuple

    def __post_init__(self):
        if not np.all(np.isfinite(self.Z)):
            raise ValueError("non-finite shooting state")


def rhs(order, V: Potential, lam: float, x: float, Z):
    """Right-hand side of the first-order system at ``x`` for ``Z = (Z1, Z2)``."""
    k = _order(order).kappa
    if x <= 0:
        raise ValueError("x must lie in (0, 1]")
    p, q = float(V.p(x)), float(V.q(x))
    z1, z2 = Z
    a = k / x - p
    return np.array([a * z1 + (lam - q) * z2, -(lam + q) * z1 - a * z2])


# ---------------------------------------------------------------------------
# batched shooting engine

def _shoot(kappa: int, lam, pots: Sequence[Potential], which, scale=None,
           derivative: bool = True, x_end: float = 1.0, dense: bool = False,
           rtol: float = RTOL, atol: float = ATOL):
    """Integrate ``W`` (and ``dW/dlambda``) for every ``lam[i]`` with potential ``pots[which[i]]``.

    Returns the solve_ivp result; the state is laid out as
    ``(W1, W2, U1, U2)`` blocks of length ``len(lam)``.
    """
    lam = np.asarray(lam, float)
    M = lam.size
    which = np.asarray(which, int)
    s = np.ones(M) if scale is None else np.asarray(scale, float)
    groups = [(pots[u], which == u) for u in np.unique(which)]

    def pq(x):
        if len(groups) == 1:
            V = groups[0][0]
            return np.full(M, V.p(x)), np.full(M, V.q(x))
        pv = np.empty(M)
        qv = np.empty(M)
        for V, m in groups:
            pv[m] = V.p(x)
            qv[m] = V.q(x)
        return pv, qv

    if kappa == 0:
        x0 = 0.0
        W1, W2 = s.copy(), np.zeros(M)
        U1, U2 = np.zeros(M), np.zeros(M)
    else:
        x0 = X0
        P0, Q0 = pq(x0)
        W1, W2, U1, U2 = (s * v for v in _frobenius_start(kappa, lam, P0, Q0, x0))
    y0 = np.concatenate([W1, W2, U1, U2] if derivative else [W1, W2])
    two_k = 2.0 * kappa

    def f(x, y):
        P, Q = pq(x)
        w1, w2 = y[:M], y[M:2 * M]
        c = (two_k / x if x > 0 else 0.0) - P
        d1 = -P * w1 + (lam - Q) * w2
        d2 = -(lam + Q) * w1 - c * w2
        if not derivative:
            return np.concatenate([d1, d2])
        u1, u2 = y[2 * M:3 * M], y[3 * M:]
        return np.concatenate([d1, d2, -P * u1 + (lam - Q) * u2 + w2,
                               -(lam + Q) * u1 - c * u2 - w1])

    sol = solve_ivp(f, (x0, x_end), y0, method="DOP853", rtol=rtol, atol=atol,
                    dense_output=dense)
    if not sol.success:
        raise IntegrationError(f"shooting failed at x = {sol.t[-1]:.6g}: {sol.message}")
    return sol


def _frobenius_start(kappa, lam, p, q, x0, terms: int = 8):
    """Series of the regular solution at ``x0`` with ``p, q`` frozen at their values there.

    ``W1 = sum a_m x^m``, ``W2 = sum b_m x^m`` with ``a_0 = 1``, ``b_0 = 0`` and

        m a_m = -p a_{m-1} + (lambda - q) b_{m-1}
        (m + 2 kappa) b_m = -(lambda + q) a_{m-1} + p b_{m-1}

    Returns ``(W1, W2, dW1/dlambda, dW2/dlambda)``.
    """
    a, b = np.ones_like(lam), np.zeros_like(lam)
    da, db = np.zeros_like(lam), np.zeros_like(lam)
    W1, W2, U1, U2 = a.copy(), b.copy(), da.copy(), db.copy()
    xm = 1.0
    for m in range(1, terms + 1):
        a, b, da, db = (
            (-p * a + (lam - q) * b) / m,
            (-(lam + q) * a + p * b) / (m + 2 * kappa),
            (-p * da + b + (lam - q) * db) / m,
            (-a - (lam + q) * da + p * db) / (m + 2 * kappa),
        )
        xm *= x0
        W1, W2, U1, U2 = W1 + a * xm, W2 + b * xm, U1 + da * xm, U2 + db * xm
    return W1, W2, U1, U2


def regular_solution(order, V: Potential, lam: float):
    """Evaluator ``x -> (Z1(x), Z2(x))`` of the regular solution, ``Z ~ (x^kappa, 0)`` at 0."""
    k = _order(order).kappa
    sol = _shoot(k, [lam], [V], [0], derivative=False, dense=True)

    def Z(x):
        x = np.asarray(x, float)
        if np.any(x <= 0) and k > 0 or np.any(x > 1):
            raise ValueError("x must lie in (0, 1]")
        xc = np.maximum(x, sol.t[0])
        W = sol.sol(np.ravel(xc)).reshape((2,) + np.shape(x))
        return W * x ** k

    return Z


def _targets(kappa, N):
    lam0 = eigenvalues0(kappa, N + 1).values
    c = lam0[1:-1]
    lo = 0.5 * (lam0[:-2] + c)
    hi = 0.5 * (c + lam0[2:])
    return c, lo, hi


def _eig_batch(kappa: int, pots: Sequence[Potential], N: int, samples: int = 9,
               tol: float = 1e-12, max_newton: int = 30):
    """Eigenvalues ``n = -N..N`` for each potential; returns an array ``(len(pots), 2N+1)``."""
    c, lo, hi = _targets(kappa, N)
    K = len(pots)
    W_ = []
    for V in pots:
        sp, sq = V.sup_norms()
        r = sp + sq + 1.0
        W_.append((np.maximum(lo, c - r), np.minimum(hi, c + r)))
    a = np.stack([w[0] for w in W_])  # (K, 2N+1)
    b = np.stack([w[1] for w in W_])
    nwin = c.size
    scale = np.maximum(1.0, np.abs(c)) ** kappa

    # coarse scan
    t = np.linspace(0.0, 1.0, samples + 1)
    grid = a[..., None] + (b - a)[..., None] * t  # (K, nwin, S+1)
    which = np.repeat(np.arange(K), nwin * (samples + 1))
    sc = np.broadcast_to(scale[None, :, None], grid.shape).ravel()
    sol = _shoot(kappa, grid.ravel(), pots, which, scale=sc, derivative=False)
    F = sol.y[grid.size:, -1].reshape(grid.shape)
    sgn = np.sign(F)
    flips = sgn[..., :-1] * sgn[..., 1:] < 0
    exact = sgn == 0
    count = flips.sum(-1) + exact[..., 1:-1].sum(-1)
    bad = np.argwhere(count != 1)
    if bad.size:
        kk, ww = bad[0]
        n = int(ww) - N
        raise WindowCaptureError(
            f"window for n = {n} ([{a[kk, ww]:.6g}, {b[kk, ww]:.6g}]) holds "
            f"{int(count[kk, ww])} sign changes of Z2(1); potential too large for labelling")
    # bracket
    idx = np.argmax(flips | exact[..., :-1], axis=-1)
    L = np.take_along_axis(grid, idx[..., None], -1)[..., 0]
    R = np.take_along_axis(grid, idx[..., None] + 1, -1)[..., 0]
    FL = np.take_along_axis(F, idx[..., None], -1)[..., 0]
    FR = np.take_along_axis(F, idx[..., None] + 1, -1)[..., 0]
    done = FL == 0
    lam = np.where(done, L, L - FL * (R - L) / (FR - FL))
    which = np.repeat(np.arange(K), nwin)
    scb = np.broadcast_to(scale, lam.shape).ravel()
    for _ in range(max_newton):
        sol = _shoot(kappa, lam.ravel(), pots, which, scale=scb)
        M = lam.size
        f = sol.y[M:2 * M, -1].reshape(lam.shape)
        df = sol.y[3 * M:, -1].reshape(lam.shape)
        # shrink bracket
        left = np.sign(f) == np.sign(FL)
        L, FL = np.where(left, lam, L), np.where(left, f, FL)
        R, FR = np.where(left, R, lam), np.where(left, FR, f)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = f / df
        new = lam - step
        out = ~np.isfinite(new) | (new < np.minimum(L, R)) | (new > np.maximum(L, R))
        # fall back to bisection outside the bracket
        new = np.where(out, 0.5 * (L + R), new)
        conv = (np.abs(step) <= tol * np.maximum(1.0, np.abs(lam))) & ~out
        conv |= (f == 0) | done | (np.abs(R - L) <= tol * np.maximum(1.0, np.abs(lam)))
        lam = np.where(f == 0, lam, new)
        if np.all(conv):
            return lam
    raise ConvergenceError("eigenvalue refinement did not converge")


def eigenvalues(order, V: Potential, N: int = 40) -> SpectralSlice:
    """``lambda_{kappa,n}(p, q)`` for ``n = -N..N``.

    Each eigenvalue is searched in the window around the unperturbed value
    ``+-j_{nu,n}`` (or 0), of half-width ``||p|| + ||q|| + 1`` clipped to the
    midpoints between neighbouring unperturbed values.  A window with other
    than one sign change of ``Z2(1; lambda)`` raises WindowCaptureError.
    """
    order = _order(order)
    if N < 1:
        raise ValueError("N must be >= 1")
    lam = _eig_batch(order.kappa, [V], N)[0]
    return SpectralSlice(order, N, lam)


def pauli_sigma3_check(order, V: Potential, N: int = 5, tol: float = 1e-8) -> dict:
    """Compare ``eig(p, -q)`` with ``-reverse(eig(p, q))``."""
    order = _order(order)
    lam = _eig_batch(order.kappa, [V, V.flip_q()], N)
    gap = float(np.max(np.abs(lam[1] + lam[0][::-1])))
    return {"kappa": order.kappa, "N": N, "eig": lam[0].tolist(),
            "eig_flipped": lam[1].tolist(), "gap": gap, "tol": tol, "pass": gap <= tol}


def frechet_slice(order, v: Potential, N: int, eps_ladder=(1e-3, 1e-4),
                  exact=None, tol: float = 1e-4) -> dict:
    """Richardson-extrapolated central differences of ``lambda_n`` along ``v`` for ``|n| <= N``.

    With ``eps_ladder = (e1, e2)`` the central differences ``D(e)`` are
    combined as ``(r D(e2) - D(e1)) / (r - 1)``, ``r = (e1 / e2)^2``.
    ``exact`` defaults to the integral formula of :func:`akns.linmap.diff_slice`.
    The gap is ``|fd - exact| / max(|exact|, 1)``: the differential is O(1)
    for unit directions, and entries that vanish exactly are compared
    absolutely.
    """
    order = _order(order)
    k = order.kappa
    eps = [float(e) for e in eps_ladder]
    pots = []
    for e in eps:
        pots += [v.scaled(e), v.scaled(-e)]
    lam = _eig_batch(k, pots, N)
    D = [(lam[2 * i] - lam[2 * i + 1]) / (2 * e) for i, e in enumerate(eps)]
    if len(eps) >= 2:
        r = (eps[0] / eps[1]) ** 2
        fd = (r * D[1] - D[0]) / (r - 1.0)
    else:
        fd = D[0]
    if exact is None:
        from .linmap import diff_slice

        exact = diff_slice(order, v, N).values
    exact = np.asarray(exact, float)
    gap = np.abs(fd - exact) / np.maximum(np.abs(exact), 1.0)
    return {"kappa": k, "n": list(range(-N, N + 1)), "eps": eps,
            "finite_difference": fd.tolist(), "formula": exact.tolist(),
            "rel_gap": gap.tolist(), "max_rel_gap": float(gap.max()), "tol": tol,
            "pass": bool(gap.max() <= tol)}


def frechet_check(order, n: int, v: Potential, eps_ladder=(1e-3, 1e-4),
                  exact: float | None = None, tol: float = 1e-4) -> dict:
    """Single-``n`` version of :func:`frechet_slice`."""
    order = _order(order)
    N = max(abs(n), 1)
    if exact is not None:
        full = np.full(2 * N + 1, np.nan)
        full[n + N] = exact
        exact = full
    r = frechet_slice(order, v, N, eps_ladder, exact, tol)
    i = n + N
    gap = r["rel_gap"][i]
    return {"kappa": order.kappa, "n": n, "eps": r["eps"],
            "finite_difference": r["finite_difference"][i], "formula": r["formula"][i],
            "rel_gap": gap, "tol": tol, "pass": bool(gap <= tol)}
