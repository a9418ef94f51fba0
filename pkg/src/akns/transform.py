"""Transformation operators between Bessel and trigonometric kernels.

    S_{k,1} f = f - 2(2k+1) x^{2k}   int_x^1 f / t^{2k+1}
    S_{k,2} f = f - 2(2k+1) x^{2k+1} int_x^1 f / t^{2k+2}
    S*_{k,1} f = f - 2(2k+1) x^{-2k-1} int_0^x t^{2k} f
    S*_{k,2} f = f - 2(2k+1) x^{-2k-2} int_0^x t^{2k+1} f

``S_{k+1}[p, q] = (S_{k,1} p, S_{k,2} q)`` and
``T_kappa = (-1)^{kappa+1} S_kappa ... S_1`` (``T_0 = -Id``), so that

    int Phi_kappa(lambda t) . (p, q) dt = int (sin 2 lambda t, cos 2 lambda t) . T_kappa[p, q] dt.

Two backends: node values on a QuadGrid, and exact Laurent polynomials with
rational coefficients (:class:`PolyFunction`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

import numpy as np

from .grid import QuadGrid, SampledFunction
from .specfun import DomainError, jhalf, yhalf, _order

__all__ = [
    "ResonanceError",
    "PolyFunction",
    "VectorKernel",
    "s_apply",
    "s_star_apply",
    "t_apply",
    "t_star_apply",
    "b_apply",
    "a_inverse",
    "kernel_equivalence_check",
    "odesl_check",
    "phi_reduction_check",
    "inverse_check",
    "commute_check",
    "kernel_annihilation_check",
    "default_grid",
]


class ResonanceError(DomainError):
    """The monomial degree makes the output logarithmic."""


_GRID = None


def default_grid() -> QuadGrid:
    """Graded grid: the ``t^{-m}`` tails need resolution toward x = 0."""
    global _GRID
    if _GRID is None:
        _GRID = QuadGrid.graded()
    return _GRID


# ---------------------------------------------------------------------------
# exact Laurent polynomials

@dataclass(frozen=True)
class PolyFunction:
    """``sum c_m x^m`` with rational ``c_m`` and integer (possibly negative) ``m``."""

    coeffs: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        c = {int(m): Fraction(v) for m, v in self.coeffs.items() if Fraction(v) != 0}
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, m: int, c=1) -> "PolyFunction":
        return cls({m: Fraction(c)})

    @classmethod
    def from_list(cls, coeffs) -> "PolyFunction":
        """Ascending coefficient list."""
        return cls({i: Fraction(c) for i, c in enumerate(coeffs)})

    def __add__(self, other):
        c = dict(self.coeffs)
        for m, v in other.coeffs.items():
            c[m] = c.get(m, Fraction(0)) + v
        return PolyFunction(c)

    def __neg__(self):
        return PolyFunction({m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "PolyFunction":
        s = Fraction(s)
        return PolyFunction({m: s * v for m, v in self.coeffs.items()})

    def shift(self, a: int) -> "PolyFunction":
        """Multiply by ``x^a``."""
        return PolyFunction({m + a: v for m, v in self.coeffs.items()})

    def deriv(self, r: int = 1) -> "PolyFunction":
        c = self.coeffs
        for _ in range(r):
            c = {m - 1: m * v for m, v in c.items() if m != 0}
        return PolyFunction(c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return sum(float(v) * x ** m for m, v in self.coeffs.items()) + 0.0 * x

    def __eq__(self, other):
        return isinstance(other, PolyFunction) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "PolyFunction(0)"
        terms = " + ".join(f"({v})x^{m}" for m, v in sorted(self.coeffs.items()))
        return f"PolyFunction({terms})"


def _s_poly(k: int, j: int, f: PolyFunction) -> PolyFunction:
    # S_{k,j}[x^m] = x^m - 2(2k+1) x^e (1 - x^{m-e}) / (m - e),  e = 2k (j=1), 2k+1 (j=2)
    e = 2 * k if j == 1 else 2 * k + 1
    c = 2 * (2 * k + 1)
    out = {}
    for m, v in f.coeffs.items():
        if m == e:
            raise ResonanceError(f"S_{{{k},{j}}} of x^{m} is logarithmic (m = {e})")
        r = Fraction(c, m - e)
        out[m] = out.get(m, Fraction(0)) + v * (1 + r)
        out[e] = out.get(e, Fraction(0)) - v * r
    return PolyFunction(out)


def _s_star_poly(k: int, j: int, f: PolyFunction) -> PolyFunction:
    # S*_{k,j}[x^m] = x^m (1 - 2(2k+1) / (m + e)),  e = 2k+1 (j=1), 2k+2 (j=2)
    e = 2 * k + 1 if j == 1 else 2 * k + 2
    c = 2 * (2 * k + 1)
    out = {}
    for m, v in f.coeffs.items():
        d = m + e  # int_0^x t^{e-1} t^m = x^{m+e} / (m+e)
        if d <= 0:
            raise DomainError(f"S*_{{{k},{j}}} of x^{m}: head integral diverges at 0")
        out[m] = v * (1 - Fraction(c, d))
    return PolyFunction(out)


# ---------------------------------------------------------------------------
# grid backend

def _grid_vals(f, g: QuadGrid):
    return g.values(f)


def _s_grid(k, j, v, g):
    x = g.nodes
    c = 2.0 * (2 * k + 1)
    if j == 1:
        return v - c * x ** (2 * k) * g.tail(v, 2 * k + 1)
    return v - c * x ** (2 * k + 1) * g.tail(v, 2 * k + 2)


def _s_star_grid(k, j, v, g):
    x = g.nodes
    c = 2.0 * (2 * k + 1)
    if j == 1:
        return v - c * x ** (-2.0 * k - 1) * g.head(v, 2 * k)
    return v - c * x ** (-2.0 * k - 2) * g.head(v, 2 * k + 1)


def _check_j(j):
    if j not in (1, 2):
        raise DomainError(f"component j must be 1 or 2, got {j}")


def s_apply(order, j: int, f, grid: QuadGrid | None = None):
    """``S_{kappa,j}[f]`` for a PolyFunction (exact) or grid data (node values)."""
    k = _order(order).kappa
    _check_j(j)
    if isinstance(f, PolyFunction):
        return _s_poly(k, j, f)
    g = grid or (f.grid if isinstance(f, SampledFunction) else default_grid())
    out = _s_grid(k, j, _grid_vals(f, g), g)
    return SampledFunction(g, out) if isinstance(f, SampledFunction) else out


def s_star_apply(order, j: int, f, grid: QuadGrid | None = None):
    """``S*_{kappa,j}[f]``, the L2 adjoint of ``S_{kappa,j}``."""
    k = _order(order).kappa
    _check_j(j)
    if isinstance(f, PolyFunction):
        return _s_star_poly(k, j, f)
    g = grid or (f.grid if isinstance(f, SampledFunction) else default_grid())
    out = _s_star_grid(k, j, _grid_vals(f, g), g)
    return SampledFunction(g, out) if isinstance(f, SampledFunction) else out


def _chain(kappa, j, f, grid, star):
    # S_{kappa-1,j} ... S_{0,j} applies S_{0,j} first; the adjoint reverses the order
    op = s_star_apply if star else s_apply
    ks = reversed(range(kappa)) if star else range(kappa)
    out = f
    for k in ks:
        out = op(k, j, out, grid)
    sign = (-1) ** (kappa + 1)
    if isinstance(out, PolyFunction):
        return out.scale(sign)
    return sign * out


def t_apply(order, pq, grid: QuadGrid | None = None):
    """``T_kappa[p, q] = (T^1 p, T^2 q)`` with ``T^j = (-1)^{kappa+1} S_{kappa-1,j} ... S_{0,j}``."""
    k = _order(order).kappa
    p, q = pq
    return _chain(k, 1, p, grid, False), _chain(k, 2, q, grid, False)


def t_star_apply(order, fg, grid: QuadGrid | None = None):
    """``((T^1)* f, (T^2)* g)``."""
    k = _order(order).kappa
    f, g = fg
    return _chain(k, 1, f, grid, True), _chain(k, 2, g, grid, True)


def b_apply(order, fg, grid: QuadGrid | None = None):
    """``B_kappa[f, g] = ((T^2)* f, (T^1)* g)``, a left inverse of ``T_kappa``."""
    k = _order(order).kappa
    f, g = fg
    return _chain(k, 2, f, grid, True), _chain(k, 1, g, grid, True)


def a_inverse(order, fg, grid: QuadGrid | None = None):
    """``A_{kappa+1}[f, g] = (S*_{kappa,2} f, S*_{kappa,1} g)``, left inverse of ``S_{kappa+1}``."""
    f, g = fg
    return s_star_apply(order, 2, f, grid), s_star_apply(order, 1, g, grid)


# ---------------------------------------------------------------------------
# kernels

@dataclass(frozen=True)
class VectorKernel:
    """``Phi_kappa`` and ``Psi_kappa`` at real argument.

    ``Phi = (pi x / 2)(-2 J_{nu-1} J_nu, J_nu^2 - J_{nu-1}^2)``,
    ``Psi = (pi x / 2)(J_{nu-1} Y_nu + J_nu Y_{nu-1}, J_{nu-1} Y_{nu-1} - J_nu Y_nu)``.
    """

    order: object

    def __post_init__(self):
        object.__setattr__(self, "order", _order(self.order))

    def _parts(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise DomainError("kernel arguments must be positive")
        k = self.order.kappa
        return x, jhalf(k - 1, x), jhalf(k, x), k

    def phi(self, x):
        x, a, b, _ = self._parts(x)
        h = 0.5 * np.pi * x
        return np.stack([-2.0 * h * a * b, h * (b * b - a * a)])

    def psi(self, x):
        x, a, b, k = self._parts(x)
        ya, yb = yhalf(k - 1, x), yhalf(k, x)
        h = 0.5 * np.pi * x
        return np.stack([h * (a * yb + b * ya), h * (a * ya - b * yb)])


def kernel_equivalence_check(order, pq, lam: float, grid: QuadGrid | None = None,
                             tol: float = 1e-8) -> dict:
    """Both sides of the Phi and Psi kernel identities at ``lambda``."""
    order = _order(order)
    g = grid or default_grid()
    p, q = g.values(pq[0]), g.values(pq[1])
    t = g.nodes
    T1, T2 = t_apply(order, (p, q), g)
    if lam == 0:
        phi = np.zeros((2, t.size))
        if order.kappa == 0:
            phi[1] = -1.0
        psi_lhs = None
    else:
        K = VectorKernel(order)
        s = abs(lam) * t
        phi = K.phi(s)
        psi = K.psi(s)
        if lam < 0:
            phi = phi * np.array([[-1.0], [1.0]])
            psi = psi * np.array([[1.0], [-1.0]])
        psi_lhs = float(g.integrate(psi[0] * p + psi[1] * q))
    phi_lhs = float(g.integrate(phi[0] * p + phi[1] * q))
    phi_rhs = float(g.integrate(np.sin(2 * lam * t) * T1 + np.cos(2 * lam * t) * T2))
    out = {"kappa": order.kappa, "lambda": lam, "phi_lhs": phi_lhs, "phi_rhs": phi_rhs,
           "phi_gap": abs(phi_lhs - phi_rhs)}
    gaps = [out["phi_gap"]]
    if psi_lhs is not None:
        psi_rhs = float(g.integrate(np.cos(2 * lam * t) * T1 - np.sin(2 * lam * t) * T2))
        out.update(psi_lhs=psi_lhs, psi_rhs=psi_rhs, psi_gap=abs(psi_lhs - psi_rhs))
        gaps.append(out["psi_gap"])
    out["gap"] = max(gaps)
    out["tol"] = tol
    out["pass"] = out["gap"] <= tol
    return out


def phi_reduction_check(order, x_samples=None, lams=(1.0, 2.7), grid: QuadGrid | None = None,
                        tol: float = 1e-8) -> dict:
    """``|Phi_{kappa+1}(lambda x) + S*_{kappa+1}[Phi_kappa(lambda .)](x)|`` on grid nodes.

    ``S*_{kappa+1}`` acts as ``S*_{kappa,1}`` on the first component and
    ``S*_{kappa,2}`` on the second.  ``x_samples`` restricts the reported
    maximum to nodes nearest the requested points.
    """
    order = _order(order)
    if order.kappa > 2:
        raise DomainError("phi_reduction_check supports kappa <= 2")
    g = grid or default_grid()
    t = g.nodes
    k = order.kappa
    K0, K1 = VectorKernel(k), VectorKernel(k + 1)
    sel = np.arange(t.size)
    if x_samples is not None:
        sel = np.unique([int(np.argmin(np.abs(t - xs))) for xs in np.atleast_1d(x_samples)])
    gaps = {}
    for lam in lams:
        P0 = K0.phi(lam * t)
        P1 = K1.phi(lam * t)
        r1 = P1[0] + _s_star_grid(k, 1, P0[0], g)
        r2 = P1[1] + _s_star_grid(k, 2, P0[1], g)
        gaps[float(lam)] = float(max(np.max(np.abs(r1[sel])), np.max(np.abs(r2[sel]))))
    gap = max(gaps.values())
    return {"kappa": k, "gaps": gaps, "gap": gap, "tol": tol, "pass": gap <= tol}


def odesl_check(order, m: int, j: int = 1) -> dict:
    """Exact check of the distributional ODE satisfied by ``g = S_{kappa,j}[x^m]``.

    ``j = 1``: ``g^{(2k+1)} = (4k+2)/x f^{(2k)} + f^{(2k+1)}``;
    ``j = 2``: ``g^{(2k+2)} = (4k+2)/x f^{(2k+1)} + f^{(2k+2)}``.
    Both sides are multiplied by ``x`` and compared coefficientwise.
    """
    k = _order(order).kappa
    _check_j(j)
    f = PolyFunction.monomial(m) if m is not None else PolyFunction()
    g = _s_poly(k, j, f)
    r = 2 * k + 1 if j == 1 else 2 * k + 2
    lhs = g.deriv(r).shift(1)
    rhs = f.deriv(r - 1).scale(4 * k + 2) + f.deriv(r).shift(1)
    resid = lhs - rhs
    return {"kappa": k, "j": j, "m": m, "g": repr(g), "residual": repr(resid),
            "pass": resid.is_zero()}


# ---------------------------------------------------------------------------
# ensemble checks

def inverse_check(order, ensemble, grid: QuadGrid | None = None) -> dict:
    """Relative L2 gaps of ``A_{kappa+1} S_{kappa+1} - Id`` and ``B_kappa T_kappa - Id``.

    ``ensemble`` has shape ``(count, 2, n_nodes)``, holding (p, q) pairs.
    L2 rather than sup norms: ``S_{0,1}[1] = 1 + 2 ln x`` is unbounded, and the
    operators act on L2(0, 1).
    """
    order = _order(order)
    g = grid or default_grid()
    k = order.kappa
    gap_a = gap_b = 0.0
    for p, q in ensemble:
        ref = max(g.norm(p), g.norm(q))
        s1, s2 = s_apply(k, 1, p, g), s_apply(k, 2, q, g)
        a1, a2 = a_inverse(k, (s1, s2), g)
        gap_a = max(gap_a, g.norm(a1 - p) / ref, g.norm(a2 - q) / ref)
        T1, T2 = t_apply(k, (p, q), g)
        b1, b2 = b_apply(k, (T1, T2), g)
        gap_b = max(gap_b, g.norm(b1 - p) / ref, g.norm(b2 - q) / ref)
    return {"kappa": k, "left_inverse_gap": gap_a, "b_t_gap": gap_b}


def commute_check(k: int, m: int, ensemble, grid: QuadGrid | None = None) -> float:
    """Relative L2 gap of ``S_{k,j} S_{m,j} - S_{m,j} S_{k,j}`` for ``j = 1, 2``."""
    g = grid or default_grid()
    gap = 0.0
    for f in ensemble:
        for j in (1, 2):
            a = _s_grid(k, j, _s_grid(m, j, f, g), g)
            b = _s_grid(m, j, _s_grid(k, j, f, g), g)
            gap = max(gap, g.norm(a - b) / g.norm(f))
    return gap


def kernel_annihilation_check(kappa_max: int = 3) -> dict:
    """Exact annihilation of ``U_{2k} = (0, x^{2k})`` and ``V_{2k+1} = (x^{2k+1}, 0)``.

    ``S*_{k+1}`` kills both; ``T*_kappa`` kills every such pair with ``k < kappa``.
    """
    rows = []
    ok = True
    for kappa in range(kappa_max + 1):
        for k in range(kappa + 1):
            u = s_star_apply(k, 2, PolyFunction.monomial(2 * k))
            v = s_star_apply(k, 1, PolyFunction.monomial(2 * k + 1))
            good = u.is_zero() and v.is_zero()
            if k < kappa:
                t1, _ = t_star_apply(kappa, (PolyFunction.monomial(2 * k + 1), PolyFunction()))
                _, t2 = t_star_apply(kappa, (PolyFunction(), PolyFunction.monomial(2 * k)))
                good = good and t1.is_zero() and t2.is_zero()
            rows.append({"kappa": kappa, "k": k, "pass": good})
            ok = ok and good
    return {"rows": rows, "pass": ok}
