"""Symmetry equations from the kernel analysis and their singular integration.

A statement "``G[u]`` is odd about x = 1/2" for a linear expression
``G = sum_k g_k(x) u^(k)`` with ``u`` of known parity ``s`` (+1 even, -1 odd)
is the ordinary differential equation ``G(x) + G(1 - x) = 0``, i.e.

    sum_k (g_k(x) + s (-1)^k g_k(1 - x)) u^(k)(x) = 0.

(For even ``G`` the sign in front of the reflected part flips.)  Coefficients
are rational with poles only at 0 and 1, so both ends are regular singular
points.  Near an end the solver switches to the Euler variables
``y_k = t^k u^(k)`` in ``s = log t``, where ``t^{-1 +- i sqrt(23)}`` behaviour
becomes bounded oscillation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import import_module

import numpy as np
import sympy
from scipy.integrate import quad, solve_ivp

from .specfun import DomainError

__all__ = [
    "RationalCoeff",
    "SingularODE",
    "MidpointData",
    "FrobeniusFit",
    "IntegrationFailure",
    "DegenerateIndicialError",
    "build_symmetry_ode",
    "crosscheck_symmetry_ode",
    "ode_residual",
    "indicial_polynomial",
    "indicial_roots",
    "midpoint_relation",
    "solve_from_midpoint",
    "frobenius_fit",
    "zero_data_sup",
    "pair01_report",
    "pair02_report",
    "pair12_report",
    "pair03_midpoint_data",
    "pair03_v2_run",
    "pair03_v1_frobenius",
]

PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3))
X_SWITCH = 0.05
RTOL, ATOL = 1e-13, 1e-14
FIT_WINDOW = (1e-4, 1e-2)
FIT_SAMPLES = 200


class IntegrationFailure(RuntimeError):
    """The integrator stopped before the requested endpoint."""

    def __init__(self, message, reached):
        super().__init__(f"{message} (reached x = {reached:.6g})")
        self.reached = reached


class DegenerateIndicialError(DomainError):
    """All leading Laurent coefficients vanish at the requested point."""


# ---------------------------------------------------------------- coefficients

@dataclass(frozen=True)
class RationalCoeff:
    """``sum_i poly[i] x^i + sum_j c_j / x^j + sum_j d_j / (1 - x)^j`` with rational data."""

    poly: tuple = ()
    at0: tuple = ()
    at1: tuple = ()

    @classmethod
    def from_table(cls, entry) -> "RationalCoeff":
        poly, a0, a1 = entry
        p = [Fraction(c) for c in poly]
        while p and p[-1] == 0:
            p.pop()

        def poles(d):
            return tuple(sorted((int(j), Fraction(c)) for j, c in d.items() if Fraction(c) != 0))

        return cls(tuple(p), poles(a0), poles(a1))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c in reversed(self.poly):
            out = out * x + float(c)
        for j, c in self.at0:
            out = out + float(c) / x ** j
        for j, d in self.at1:
            out = out + float(d) / (1 - x) ** j
        return out

    def exact(self, x) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for c in reversed(self.poly):
            out = out * x + c
        out += sum((c / x ** j for j, c in self.at0), Fraction(0))
        out += sum((d / (1 - x) ** j for j, d in self.at1), Fraction(0))
        return out

    def sympy(self, x):
        return (sum(sympy.Rational(c) * x ** i for i, c in enumerate(self.poly))
                + sum(sympy.Rational(c) / x ** j for j, c in self.at0)
                + sum(sympy.Rational(d) / (1 - x) ** j for j, d in self.at1))

    def is_zero(self) -> bool:
        return not (self.poly or self.at0 or self.at1)

    def scaled(self, f) -> "RationalCoeff":
        f = Fraction(f)
        return RationalCoeff(tuple(f * c for c in self.poly),
                             tuple((j, f * c) for j, c in self.at0),
                             tuple((j, f * d) for j, d in self.at1))

    def reflect(self) -> "RationalCoeff":
        """Coefficient of ``x -> 1 - x``."""
        p = [Fraction(0)] * len(self.poly)
        for i, c in enumerate(self.poly):
            for r in range(i + 1):  # (1 - x)^i
                p[r] += c * math.comb(i, r) * (-1) ** r
        while p and p[-1] == 0:
            p.pop()
        return RationalCoeff(tuple(p), self.at1, self.at0)

    def pole_order(self, at: int = 0) -> int:
        poles = self.at0 if at == 0 else self.at1
        return max((j for j, _ in poles), default=0)

    def leading(self, at: int = 0, max_terms: int = 64):
        """``(e, c)`` with ``a(t) = c t^e + higher``, ``t`` the distance to ``at``; None if zero."""
        if at == 1:
            return self.reflect().leading(0, max_terms)
        if self.at0:
            j, c = self.at0[-1]
            return -j, c
        for i in range(max_terms):
            c = self.poly[i] if i < len(self.poly) else Fraction(0)
            c += sum((d * math.comb(j + i - 1, i) for j, d in self.at1), Fraction(0))
            if c != 0:
                return i, c
        return None


def _table(tab) -> dict:
    return {int(k): RationalCoeff.from_table(v) for k, v in tab.items()}


# ------------------------------------------------------------------ the ODE

@dataclass(frozen=True)
class SingularODE:
    """``sum_k a_k(x) u^(k)(x) = 0`` with rational ``a_k`` singular only at 0 and 1."""

    coeffs: tuple
    name: str = ""
    crosscheck_gap: float = float("nan")

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1].is_zero():
            c.pop()
        if len(c) < 2:
            raise DomainError("an ODE needs a nonzero coefficient of order >= 1")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_table(cls, tab, name: str = "") -> "SingularODE":
        d = _table(tab)
        n = max(d)
        return cls(tuple(d.get(k, RationalCoeff()) for k in range(n + 1)), name)

    @property
    def ode_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def pole_orders(self):
        return tuple((a.pole_order(0), a.pole_order(1)) for a in self.coeffs)

    def coefficients(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.stack([a(x) for a in self.coeffs])

    def apply(self, derivs, x) -> np.ndarray:
        """``sum_k a_k(x) u^(k)(x)`` from an array of derivatives ``(order + 1, ...)``."""
        return np.sum(self.coefficients(x) * np.asarray(derivs, dtype=float)[: self.ode_order + 1], axis=0)

    def reflected(self) -> "SingularODE":
        """The same equation in ``t = 1 - x``."""
        return SingularODE(tuple(a.reflect().scaled((-1) ** k) for k, a in enumerate(self.coeffs)),
                           self.name + " (reflected)", self.crosscheck_gap)

    def check_pole_orders(self, t: float = 1e-7, tol: float = 1e-3) -> bool:
        """Sampled ``t^m a_k`` approaches the leading Laurent coefficient at both ends."""
        for at in (0, 1):
            x = t if at == 0 else 1 - t
            for a in self.coeffs:
                lead = a.leading(at)
                if lead is None:
                    continue
                e, c = lead
                val = float(a(x)) * t ** (-e)
                if abs(val - float(c)) > tol * abs(float(c)):
                    return False
        return True

    def _matrices(self):
        n = self.ode_order
        deg = max(len(a.poly) for a in self.coeffs)
        j0 = max(max(a.pole_order(0), a.pole_order(1)) for a in self.coeffs)
        P = np.zeros((n + 1, max(deg, 1)))
        Q0 = np.zeros((n + 1, j0 + 1))
        Q1 = np.zeros((n + 1, j0 + 1))
        for k, a in enumerate(self.coeffs):
            for i, c in enumerate(a.poly):
                P[k, i] = float(c)
            for j, c in a.at0:
                Q0[k, j] = float(c)
            for j, d in a.at1:
                Q1[k, j] = float(d)
        return P, Q0, Q1

    def scalar_evaluator(self):
        """Fast evaluator of all coefficients at one point."""
        P, Q0, Q1 = self._matrices()
        ip = np.arange(P.shape[1])
        iq = np.arange(Q0.shape[1])

        def coeffs(x):
            return P @ x ** ip + Q0 @ x ** (-iq) + Q1 @ (1 - x) ** (-iq)

        return coeffs


@dataclass(frozen=True)
class MidpointData:
    """Derivatives ``u^(k)(1/2)``, ``k = 0..len - 1``, and the parity of ``u`` about 1/2."""

    derivs: tuple
    even: bool

    def __post_init__(self):
        d = tuple(Fraction(v) for v in self.derivs)
        start = 1 if self.even else 0
        bad = [k for k in range(start, len(d), 2) if d[k] != 0]
        if bad:
            kind = "odd" if self.even else "even"
            raise DomainError(f"{kind}-order derivatives {bad} must vanish at 1/2 by parity")
        object.__setattr__(self, "derivs", d)

    def reflected(self) -> "MidpointData":
        return MidpointData(tuple((-1) ** k * v for k, v in enumerate(self.derivs)), self.even)

    def as_array(self, n: int) -> np.ndarray:
        if len(self.derivs) < n:
            raise DomainError(f"need {n} midpoint derivatives, got {len(self.derivs)}")
        return np.array([float(v) for v in self.derivs[:n]])


@dataclass(frozen=True)
class FrobeniusFit:
    """``t u(t) ~ A + B cos(sqrt(23) log t) + C sin(sqrt(23) log t)`` on the fit window."""

    A: float
    B: float
    C: float
    residual: float
    window: tuple = FIT_WINDOW
    omega: float = math.sqrt(23)

    def as_array(self):
        return np.array([self.A, self.B, self.C])

    def to_dict(self):
        return {"A": self.A, "B": self.B, "C": self.C, "residual": self.residual,
                "window": list(self.window), "omega": self.omega}


# ------------------------------------------------------------ construction

def _pair_module(pair):
    pair = tuple(int(v) for v in pair)
    if pair not in PAIRS:
        raise DomainError(f"unsupported pair {pair}; expected one of {PAIRS}")
    return import_module(f".odes.pair{pair[0]}{pair[1]}", __package__)


def _branch_tables(pair, j):
    """``(displayed ODE table, G table, G odd, unknown even, derivative shift)``."""
    if j not in (1, 2):
        raise DomainError("branch j must be 1 or 2")
    m = _pair_module(pair)
    pair = tuple(int(v) for v in pair)
    if pair == (1, 2):
        if j == 1:
            return m.ODE_Y, m.H, m.H_ODD, m.UNKNOWN_EVEN, m.H_SHIFT
        return m.ODE_FO, m.G, m.G_ODD, m.UNKNOWN_EVEN, m.G_SHIFT
    return m.ODE, m.G, m.G_ODD, m.UNKNOWN_EVEN, m.SHIFT


def _symbolic_symmetrization(G, g_odd, unknown_even, shift):
    x = sympy.Symbol("x")
    sign = (1 if g_odd else -1) * (1 if unknown_even else -1)
    out = {}
    for k, entry in G.items():
        g = RationalCoeff.from_table(entry).sympy(x)
        a = sympy.cancel(sympy.together(g + sign * (-1) ** int(k) * g.subs(x, 1 - x)))
        if a != 0:
            out[int(k) - shift] = a
    return x, out


def crosscheck_symmetry_ode(ode: SingularODE, G, g_odd: bool, unknown_even: bool, shift: int,
                            samples: int = 20, seed: int = 0) -> float:
    """Relative gap between the transcribed coefficients and a symbolic symmetrization of ``G``.

    Two checks are combined.  Coefficientwise, ``g_k(x) + s (-1)^k g_k(1 - x)``
    is formed in sympy and compared with ``a_k`` at random points after fixing
    the overall normalisation.  Functionally, ``G[u](x) + G[u](1 - x)`` is
    evaluated for explicit test functions ``u`` of the right parity (chain rule
    by sympy) and compared with ``sum a_k y^(k)``, ``y = u^(shift)``.
    """
    x, sym = _symbolic_symmetrization(G, g_odd, unknown_even, shift)
    n = ode.ode_order
    if max(sym) != n:
        return float("inf")
    factor = sympy.nsimplify(sympy.simplify(ode.coeffs[n].sympy(x) / sym[n]))
    if factor.free_symbols:
        return float("inf")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.02, 0.98, samples)
    gap = 0.0
    rats = [sympy.Rational(Fraction(float(p))) for p in pts]
    for k in range(n + 1):
        e = factor * sym.get(k, sympy.Integer(0))
        ref = np.array([float(e.subs(x, r)) for r in rats])
        got = ode.coeffs[k](pts)
        gap = max(gap, float(np.max(np.abs(got - ref) / np.maximum(1.0, np.abs(ref)))))
    # functional check with u = cosh / sinh of c (x - 1/2)
    sign_g = 1 if g_odd else -1
    Gc = _table(G)
    for c in (sympy.Rational(3, 2), sympy.Rational(7, 3)):
        u = sympy.cosh(c * (x - sympy.Rational(1, 2))) if unknown_even else sympy.sinh(c * (x - sympy.Rational(1, 2)))
        Gu = sum(Gc[k].sympy(x) * sympy.diff(u, x, k) for k in Gc)
        total = sympy.lambdify(x, Gu + sign_g * Gu.subs(x, 1 - x), "numpy")
        ders = [sympy.lambdify(x, sympy.diff(u, x, shift + k), "numpy") for k in range(n + 1)]
        dv = np.array([np.broadcast_to(d(pts), pts.shape) for d in ders])
        lhs = ode.apply(dv, pts)
        rhs = float(factor) * total(pts)
        scale = np.maximum(1.0, np.sum(np.abs(ode.coefficients(pts) * dv), axis=0))
        gap = max(gap, float(np.max(np.abs(lhs - rhs) / scale)))
    return gap


def build_symmetry_ode(pair, j: int, crosscheck: bool = True) -> SingularODE:
    """Symmetric ODE for branch ``j`` of ``pair``, checked against its generating expression.

    (0, 1): second order in ``v1`` (j = 1) or ``y = v2'`` (j = 2).
    (0, 2): fourth order in ``v1`` (j = 1) or ``y = v2'`` (j = 2).
    (1, 2): fourth order in ``y = f_o'`` (j = 1) or ``y = f_o'''`` (j = 2).
    (0, 3): eighth order in ``v1`` (j = 1) or ``w = v2'`` (j = 2).
    """
    tab, G, g_odd, even, shift = _branch_tables(pair, j)
    ode = SingularODE.from_table(tab, f"pair {tuple(pair)} branch {j}")
    if crosscheck:
        gap = crosscheck_symmetry_ode(ode, G, g_odd, even, shift)
        ode = SingularODE(ode.coeffs, ode.name, gap)
    return ode


# ------------------------------------------------------------ analysis

def _as_sympy(u):
    x = sympy.Symbol("x")
    if isinstance(u, str):
        return x, sympy.sympify(u, locals={"x": x})
    return x, u


def ode_residual(ode: SingularODE, u, x_grid=None) -> float:
    """``max |sum a_k u^(k)|`` over ``x_grid``.

    ``u`` is a sympy expression (or string) in ``x``, differentiated exactly
    and evaluated in rational arithmetic at the (dyadic) grid points, so the
    residual of an exact solution is zero rather than roundoff; or a callable
    returning the derivative array ``(order + 1, len(x))``.
    """
    if x_grid is None:
        x_grid = np.linspace(0.05, 0.95, 91)
    x_grid = np.asarray(x_grid, dtype=float)
    n = ode.ode_order
    if callable(u) and not isinstance(u, sympy.Basic):
        return float(np.max(np.abs(ode.apply(u(x_grid), x_grid))))
    x, expr = _as_sympy(u)
    ders = [expr] + [sympy.diff(expr, x, k) for k in range(1, n + 1)]
    worst = 0.0
    for xv in x_grid:
        r = sympy.Rational(Fraction(float(xv)).numerator, Fraction(float(xv)).denominator)
        tot = sum(sympy.Rational(ode.coeffs[k].exact(Fraction(float(xv)))) * ders[k].subs(x, r)
                  for k in range(n + 1))
        worst = max(worst, abs(float(sympy.N(tot, 40))))
    return worst


def indicial_polynomial(ode: SingularODE, at: int = 0):
    """Exact coefficients (ascending in ``rho``) of the indicial polynomial at ``at``.

    ``I(rho) = sum c_k rho (rho - 1) ... (rho - k + 1)`` over the coefficients
    whose leading Laurent term ``c_k t^{e_k}`` has the largest ``k - e_k``; in
    ``t = 1 - x`` the derivatives pick up ``(-1)^k``.
    """
    if at not in (0, 1):
        raise DomainError("indicial point must be 0 or 1")
    leads = {}
    for k, a in enumerate(ode.coeffs):
        lead = a.leading(at)
        if lead is not None:
            e, c = lead
            leads[k] = (k - e, c * (-1) ** k if at == 1 else c)
    if not leads:
        raise DegenerateIndicialError("all coefficients vanish identically")
    D = max(d for d, _ in leads.values())
    poly = [Fraction(0)]
    for k, (d, c) in leads.items():
        if d != D:
            continue
        ff = [Fraction(1)]  # falling factorial rho (rho - 1) ... (rho - k + 1)
        for i in range(k):
            ff = [Fraction(0)] + ff
            for r in range(len(ff) - 1):
                ff[r] -= i * ff[r + 1]
        poly += [Fraction(0)] * (len(ff) - len(poly))
        for r, v in enumerate(ff):
            poly[r] += c * v
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    if all(v == 0 for v in poly):
        raise DegenerateIndicialError("leading data cancel; the indicial polynomial is zero")
    return poly


def indicial_roots(ode: SingularODE, at: int = 0):
    """Roots of the indicial polynomial (companion-matrix eigenvalues), sorted."""
    poly = indicial_polynomial(ode, at)
    if len(poly) == 1:
        return []
    roots = np.roots([float(c) for c in reversed(poly)])
    roots = [complex(round(r.real, 14), round(r.imag, 14)) for r in roots]
    return sorted(roots, key=lambda r: (r.real, r.imag))


def midpoint_relation(table, even: bool) -> dict:
    """Exact coefficients at x = 1/2 of a local operator acting on a function of given parity.

    Orders whose derivative vanishes at 1/2 by parity are dropped.
    """
    half = Fraction(1, 2)
    out = {}
    for k, a in _table(table).items():
        if (k % 2 == 1) == even:
            continue
        c = a.exact(half)
        if c != 0:
            out[k] = c
    return dict(sorted(out.items(), reverse=True))


# ------------------------------------------------------------ integration

@dataclass
class HalfSolution:
    """Solution on ``[t_end, 1/2]`` in the local coordinate ``t`` (distance to the endpoint).

    The state holds ``u, u', ..., u^(n-1)`` and optional extras
    ``P = int_{1/2}^t u`` and ``Q = int_{1/2}^t P rho``.
    """

    order: int
    plain: object
    euler: object
    t_switch: float
    t_end: float
    extras: int = 0

    def state(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t < self.t_end * (1 - 1e-9)) or np.any(t > 0.5 + 1e-12):
            raise DomainError(f"t outside [{self.t_end}, 0.5]")
        t = np.clip(t, self.t_end, 0.5)
        n = self.order
        out = np.empty((n + self.extras, t.size))
        hi = t >= self.t_switch
        if np.any(hi):
            out[:, hi] = self.plain(t[hi])
        if np.any(~hi):
            lo = t[~hi]
            y = self.euler(np.log(lo))
            k = np.arange(n)[:, None]
            out[:n, ~hi] = y[:n] / lo[None, :] ** k
            out[n:, ~hi] = y[n:]
        return out

    def u(self, t):
        return self.state(t)[0]


def _integrate_half(ode: SingularODE, data: MidpointData, t_end: float, weight=None,
                    t_switch: float = X_SWITCH, rtol: float = RTOL, atol: float = ATOL) -> HalfSolution:
    n = ode.ode_order
    coeffs = ode.scalar_evaluator()
    extras = 2 if weight is not None else 0
    y0 = np.concatenate([data.as_array(n), np.zeros(extras)])

    def plain(t, z):
        a = coeffs(t)
        dz = np.empty_like(z)
        dz[: n - 1] = z[1:n]
        dz[n - 1] = -np.dot(a[:n], z[:n]) / a[n]
        if extras:
            dz[n] = z[0]
            dz[n + 1] = z[n] * weight(t)
        return dz

    kk = np.arange(n)

    def euler(s, z):
        t = math.exp(s)
        a = coeffs(t)
        b = a[:n] * t ** (n - kk) / a[n]
        dz = np.empty_like(z)
        dz[: n - 1] = kk[: n - 1] * z[: n - 1] + z[1:n]
        dz[n - 1] = (n - 1) * z[n - 1] - np.dot(b, z[:n])
        if extras:
            dz[n] = t * z[0]
            dz[n + 1] = t * z[n] * weight(t)
        return dz

    t_switch = max(t_switch, t_end)
    s1 = solve_ivp(plain, (0.5, t_switch), y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True)
    if s1.status != 0:
        raise IntegrationFailure(s1.message, float(s1.t[-1]))
    z = s1.y[:, -1].copy()
    z[:n] *= t_switch ** kk
    lo = math.log(t_end)
    if t_end < t_switch:
        s2 = solve_ivp(euler, (math.log(t_switch), lo), z, method="DOP853", rtol=rtol, atol=atol,
                       dense_output=True)
        if s2.status != 0:
            raise IntegrationFailure(s2.message, math.exp(float(s2.t[-1])))
        esol = s2.sol
    else:
        esol = lambda s: np.repeat(z[:, None], np.size(s), axis=1)  # noqa: E731
    return HalfSolution(n, s1.sol, esol, t_switch, t_end, extras)


@dataclass
class SymmetricSolution:
    """Solutions integrated from 1/2 toward both ends."""

    left: HalfSolution
    right: HalfSolution
    delta: float

    def derivs(self, x) -> np.ndarray:
        """``u^(k)(x)``, ``k < order``, on ``[delta, 1 - delta]``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = self.left.order
        out = np.empty((n, x.size))
        L = x <= 0.5
        if np.any(L):
            out[:, L] = self.left.state(x[L])[:n]
        if np.any(~L):
            sign = (-1.0) ** np.arange(n)[:, None]
            out[:, ~L] = sign * self.right.state(1 - x[~L])[:n]
        return out

    def u(self, x):
        return self.derivs(x)[0]


def solve_from_midpoint(ode: SingularODE, data: MidpointData, delta: float, weight=None,
                        sides=("left", "right")) -> SymmetricSolution:
    """Integrate from x = 1/2 down to ``x = delta`` and up to ``x = 1 - delta``.

    ``weight`` (a function of the local coordinate, applied on the left; its
    mirror ``rho(1 - t)`` on the right) switches on the extras ``P``, ``Q``.
    """
    if not 0 < delta < 0.5:
        raise DomainError("delta must lie in (0, 1/2)")
    left = right = None
    if "left" in sides:
        left = _integrate_half(ode, data, delta, weight)
    if "right" in sides:
        w = (lambda t: weight(1 - t)) if weight is not None else None
        right = _integrate_half(ode.reflected(), data.reflected(), delta, w)
    return SymmetricSolution(left, right, delta)


def frobenius_fit(half: HalfSolution, window=FIT_WINDOW, samples: int = FIT_SAMPLES,
                  omega: float = math.sqrt(23)) -> FrobeniusFit:
    """Least-squares fit of ``t u(t)`` against ``1, cos(omega log t), sin(omega log t)``."""
    t = np.logspace(math.log10(window[0]), math.log10(window[1]), samples)
    y = t * half.u(t)
    L = np.log(t)
    M = np.column_stack([np.ones_like(t), np.cos(omega * L), np.sin(omega * L)])
    c, *_ = np.linalg.lstsq(M, y, rcond=None)
    res = float(np.max(np.abs(M @ c - y)) / max(np.max(np.abs(y)), 1e-300))
    return FrobeniusFit(float(c[0]), float(c[1]), float(c[2]), res, tuple(window), omega)


def zero_data_sup(ode: SingularODE, delta: float = 0.05) -> float:
    """``sup |u|`` of the solution with all midpoint data zero (it must be the zero function)."""
    data = MidpointData((0,) * ode.ode_order, True)
    sol = solve_from_midpoint(ode, data, delta)
    x = np.linspace(delta, 1 - delta, 201)
    return float(np.max(np.abs(sol.derivs(x))))


def _limit(expr_str, at):
    x, e = _as_sympy(expr_str)
    t = x if at == 0 else 1 - x
    return sympy.limit(t * e, x, at, "+" if at == 0 else "-")


def _l2_growth(expr_str, deltas, at=0):
    """``int`` of ``u^2`` from ``delta`` to 1/2 (from 1/2 to 1 - delta for at = 1)."""
    x, e = _as_sympy(expr_str)
    f = sympy.lambdify(x, e ** 2, "math")
    out = []
    for d in deltas:
        a, b = (d, 0.5) if at == 0 else (0.5, 1 - d)
        pts = np.geomspace(d, 0.5, 12)
        if at == 1:
            pts = 1 - pts
        out.append(quad(f, a, b, points=sorted(pts[1:-1]), limit=400)[0])
    return out


# ------------------------------------------------------------ pair reports

def pair01_report(deltas=(1e-2, 1e-3, 1e-4)) -> dict:
    """Second-order equation, closed form, non-integrability and the zero branch."""
    m = _pair_module((0, 1))
    ode = build_symmetry_ode((0, 1), 1)
    x, u = _as_sympy(m.CLOSED_FORM)
    half = sympy.Rational(1, 2)
    mid = (u.subs(x, half), sympy.diff(u, x).subs(x, half))
    l2 = _l2_growth(m.CLOSED_FORM, deltas)
    data = MidpointData(m.MIDPOINT, True)
    sol = solve_from_midpoint(ode, data, 0.05)
    xs = np.linspace(0.05, 0.95, 181)
    ref = sympy.lambdify(x, u, "numpy")(xs)
    return {
        "pair": [0, 1],
        "ode_order": ode.ode_order,
        "crosscheck_gap": ode.crosscheck_gap,
        "closed_form_residual": ode_residual(ode, u),
        "midpoint_values": [str(v) for v in mid],
        "midpoint_ok": bool(mid == tuple(sympy.Integer(v) for v in m.MIDPOINT)),
        "integrated_vs_closed_form": float(np.max(np.abs(sol.u(xs) - ref))),
        "blowup_limit": str(_limit(m.CLOSED_FORM, 0)),
        "blowup_ok": bool(_limit(m.CLOSED_FORM, 0) == sympy.sympify(m.BLOWUP_LIMIT)),
        "deltas": list(deltas),
        "l2_partial": l2,
        "non_l2": bool(all(v >= 1 / (5 * d) for v, d in zip(l2, deltas))),
        "branch2_zero_sup": zero_data_sup(build_symmetry_ode((0, 1), 2, crosscheck=False)),
        "indicial_at0": [str(r) for r in indicial_roots(ode, 0)],
    }


def pair02_report(deltas=(1e-2, 1e-3, 1e-4)) -> dict:
    """Midpoint relation, closed form, indicial roots, and the zero branch."""
    m = _pair_module((0, 2))
    ode = build_symmetry_ode((0, 2), 1)
    rel = midpoint_relation(m.MIDPOINT_OPERATOR, even=True)
    v1pp = -rel[0] * Fraction(m.V1_HALF) / rel[2]
    x, u = _as_sympy(m.CLOSED_FORM)
    half = sympy.Rational(1, 2)
    d = [sympy.diff(u, x, k).subs(x, half) for k in range(4)]
    poly = indicial_polynomial(ode, 0)
    roots = indicial_roots(ode, 0)
    lim = _limit(m.CLOSED_FORM, 0)
    l2 = _l2_growth(m.CLOSED_FORM, deltas)
    c2 = float(lim) ** 2
    return {
        "pair": [0, 2],
        "ode_order": ode.ode_order,
        "crosscheck_gap": ode.crosscheck_gap,
        "midpoint_relation": {str(k): str(v) for k, v in rel.items()},
        "v1pp_half": str(v1pp),
        "v1pp_ok": bool(v1pp == Fraction(m.V1PP_HALF)),
        "closed_form_midpoint": [str(v) for v in d],
        "closed_form_normalisation": str(d[0]),
        "closed_form_ratio_ok": bool(d[1] == 0 and d[3] == 0 and d[2] == d[0] * sympy.Rational(v1pp)),
        "closed_form_residual": ode_residual(ode, u),
        "blowup_limit": str(lim),
        "blowup_ok": bool(lim == sympy.sympify(m.BLOWUP_LIMIT)),
        "l2_partial": l2,
        "non_l2": bool(all(v * dd >= 0.5 * c2 for v, dd in zip(l2, deltas))),
        "indicial_poly_at0": [str(c) for c in poly],
        "indicial_I0": str(poly[0]),
        "indicial_at0": [str(r) for r in roots],
        "branch2_zero_sup": zero_data_sup(build_symmetry_ode((0, 2), 2, crosscheck=False)),
    }


def pair12_report(deltas=(1e-2, 1e-3, 1e-4)) -> dict:
    """Closed-form ``y``, reconstruction of ``f``, non-integrability, and the recoveries."""
    from .transform import PolyFunction, s_star_apply

    m = _pair_module((1, 2))
    ode = build_symmetry_ode((1, 2), 1)
    ode2 = build_symmetry_ode((1, 2), 2)
    rel = midpoint_relation(m.MIDPOINT_OPERATOR, even=True)
    # at 1/2: f = f_e + f_o, f_e^(2i) = 2 f_o^(2i-1), odd derivatives of f_e and even ones of f_o vanish
    half = Fraction(1, 2)
    tab = _table(m.MIDPOINT_OPERATOR)
    fo_rel, fe_coeff = {}, Fraction(0)
    for k, a in tab.items():
        c = a.exact(half)
        if k == 0:
            fe_coeff += c
        elif k % 2:
            fo_rel[k] = fo_rel.get(k, 0) + c
        else:
            fo_rel[k - 1] = fo_rel.get(k - 1, 0) + 2 * c
    x, y = _as_sympy(m.CLOSED_FORM_Y)
    h = sympy.Rational(1, 2)
    ymid = [sympy.diff(y, x, k).subs(x, h) for k in range(4)]
    # integration chain: f_o = int_{1/2} y, f_e = 2 int_{1/2} f_o + C
    yf = sympy.lambdify(x, y, "math")

    def fo(s):
        return quad(yf, 0.5, s, epsabs=1e-14, epsrel=1e-13)[0]

    def rec(s):
        return 2 * quad(fo, 0.5, s, epsabs=1e-14, epsrel=1e-13)[0] + fo(s)

    _, F = _as_sympy(m.CLOSED_FORM_F)
    Ff = sympy.lambdify(x, F, "math")
    xs = np.linspace(0.05, 0.95, 181)
    diff = np.array([rec(s) - Ff(s) for s in xs])
    sol = solve_from_midpoint(ode, MidpointData(m.Y_MIDPOINT, True), 0.05)
    yv = sympy.lambdify(x, y, "numpy")
    a = PolyFunction.monomial(1, 3)
    c = PolyFunction.monomial(0, 5)
    return {
        "pair": [1, 2],
        "crosscheck_gap": max(ode.crosscheck_gap, ode2.crosscheck_gap),
        "midpoint_relation_f": {str(k): str(v) for k, v in rel.items()},
        "midpoint_relation_fo": {str(k): str(v) for k, v in sorted(fo_rel.items(), reverse=True)},
        "fe_half_coefficient": str(fe_coeff),
        "fo3_over_fo1": str(-fo_rel.get(1, 0) / fo_rel[3]),
        "y_midpoint": [str(v) for v in ymid],
        "y_midpoint_ok": bool(ymid == [sympy.Integer(v) for v in m.Y_MIDPOINT]),
        "closed_form_residual": ode_residual(ode, y),
        "integrated_vs_closed_form": float(np.max(np.abs(sol.u(xs) - yv(xs)))),
        "f_reconstruction_gap": float(np.max(np.abs(diff - diff[90]))),
        "f_limit_at0": str(_limit(m.CLOSED_FORM_F, 0)),
        "f_limit_at1": str(_limit(m.CLOSED_FORM_F, 1)),
        "f_l2_partial_at0": _l2_growth(m.CLOSED_FORM_F, deltas, 0),
        "f_l2_partial_at1": _l2_growth(m.CLOSED_FORM_F, deltas, 1),
        "indicial_at0": [str(r) for r in indicial_roots(ode, 0)],
        "branch2_zero_sup": zero_data_sup(ode2),
        "v2_from_linear_f_is_zero": bool(s_star_apply(0, 1, a).is_zero()),
        "v1_from_constant_f_is_zero": bool(s_star_apply(0, 2, c).is_zero()),
    }


def pair03_midpoint_data(j: int) -> dict:
    """Derivative relations at 1/2 for the (0, 3) analysis.

    j = 2: ``{k: c_k}`` relations of ``F, F'', F^(4)`` on odd ``v2`` and the
    resulting data for ``w = v2'`` with ``v2'(1/2) = 1``.
    j = 1: the two fundamental even data sets ``u`` and ``v``.
    """
    m = _pair_module((0, 3))
    if j == 2:
        rels = [midpoint_relation(tab, even=False) for tab in (m.F0, m.F2, m.F4)]
        d = {1: Fraction(1), 3: None, 5: None, 7: None}
        for rel in rels:
            top = max(rel)
            d[top] = -sum(c * d[k] for k, c in rel.items() if k != top) / rel[top]
        w = [d[1], 0, d[3], 0, d[5], 0, d[7], 0]
        return {"relations": [{str(k): str(v) for k, v in r.items()} for r in rels],
                "w": w, "matches_table": bool(tuple(w) == tuple(Fraction(v) for v in m.W_DERIVS))}
    if j != 1:
        raise DomainError("branch j must be 1 or 2")
    out = {}
    for name, (a0, a2) in (("u", (1, 0)), ("v", (0, 1))):
        d = {0: Fraction(a0), 2: Fraction(a2)}
        for top in (4, 6):
            d[top] = sum(c * d[k] for k, c in m.V1_RELATIONS[top].items())
        out[name] = [d[0], 0, d[2], 0, d[4], 0, d[6], 0]
    return out


def _tail(P_delta, fit: FrobeniusFit, delta, weight):
    """``int_0^delta rho(t) (P(delta) + int_delta^t F(s)/s ds) dt`` with the fitted ``F``."""
    om = fit.omega

    def phi(t):
        L = math.log(t)
        return (fit.B * math.sin(om * L) - fit.C * math.cos(om * L)) / om

    def prim(t):
        return P_delta + fit.A * math.log(t / delta) + phi(t) - phi(delta)

    return quad(lambda t: weight(t) * prim(t), 0.0, delta, limit=400)[0]


def pair03_v2_run(delta: float = 1e-5, plot_points: int = 401) -> dict:
    """Integrate the eighth-order equation for ``w = v2'`` and form ``int v2 x^6``.

    The integral over ``[delta, 1 - delta]`` is reported together with an
    endpoint tail estimated from the fitted local form (``t w ~ A + B cos +
    C sin``); near x = 1 the weight is ~1 and ``v2 ~ A log(1 - x)``, so the
    tail is ``O(delta log delta)``.
    """
    if not 1e-5 <= delta <= 1e-2:
        raise DomainError("delta must lie in [1e-5, 1e-2]")
    ode = build_symmetry_ode((0, 3), 2)
    data = MidpointData(pair03_midpoint_data(2)["w"], True)
    t_end = min(delta, FIT_WINDOW[0])
    rhoL = lambda t: t ** 6  # noqa: E731
    sol = solve_from_midpoint(ode, data, t_end, weight=rhoL)
    n = ode.ode_order
    sl, sr = sol.left.state(delta), sol.right.state(delta)
    PL, QL = float(sl[n, 0]), float(sl[n + 1, 0])
    PR, QR = float(sr[n, 0]), float(sr[n + 1, 0])
    # left: v2(x) = P_L(x), int_delta^{1/2} v2 x^6 = -Q_L; right: v2(1 - t) = -P_R(t), int = Q_R
    body = QR - QL
    fitL, fitR = frobenius_fit(sol.left), frobenius_fit(sol.right)
    tailL = _tail(PL, fitL, delta, rhoL)
    tailR = -_tail(PR, fitR, delta, lambda t: (1 - t) ** 6)
    xs = np.linspace(0.1, 0.9, 161)
    parity = float(np.max(np.abs(sol.u(xs) - sol.u(1 - xs))))
    xp = np.linspace(delta, 1 - delta, plot_points)
    wL = sol.derivs(xp)[0]
    v2 = np.where(xp <= 0.5, sol.left.state(np.minimum(xp, 0.5))[n],
                  -sol.right.state(np.minimum(1 - xp, 0.5))[n])
    return {
        "delta": delta,
        "integral": body,
        "tail_estimate": tailL + tailR,
        "integral_with_tail": body + tailL + tailR,
        "v2_at_half": float(sol.left.state(0.5)[n, 0]),
        "parity_gap": parity,
        "fit_left": fitL.to_dict(),
        "fit_right": fitR.to_dict(),
        "crosscheck_gap": ode.crosscheck_gap,
        "indicial_at0": [str(r) for r in indicial_roots(ode, 0)],
        "plot": {"x": xp.tolist(), "w": wL.tolist(), "v2": v2.tolist()},
    }


def pair03_v1_frobenius(window=FIT_WINDOW, samples: int = FIT_SAMPLES):
    """Local fits of the two fundamental even solutions and the stacked 3x2 null test."""
    ode = build_symmetry_ode((0, 3), 1)
    data = pair03_midpoint_data(1)
    t_end = window[0] * 0.5
    fits = {}
    for name in ("u", "v"):
        sol = solve_from_midpoint(ode, MidpointData(data[name], True), t_end, sides=("left",))
        fits[name] = frobenius_fit(sol.left, window, samples)
    M = np.column_stack([fits["u"].as_array(), fits["v"].as_array()])
    _, s, vt = np.linalg.svd(M)
    null = {"matrix": M.tolist(), "singular_values": s.tolist(),
            "smallest_singular_value": float(s[-1]),
            "direction": vt[-1].tolist(),
            "residual_norm": float(np.linalg.norm(M @ vt[-1])),
            "trivial_only": bool(s[-1] >= 1e-4)}
    return fits["u"], fits["v"], null
