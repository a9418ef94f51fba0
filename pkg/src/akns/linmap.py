"""The linearised spectral map at zero potential.

For a direction ``v = (v1, v2)`` the differential of the eigenvalues is

    d_{kappa,+-n} = c_n^2 (-+A_n(v1) + B_n(v2)),    d_{kappa,0} = -(2 kappa + 1) int x^{2 kappa} v2

with

    A_n(v1) = int 2 j x J_{nu-1}(j x) J_nu(j x) v1,
    B_n(v2) = int j x (J_nu^2 - J_{nu-1}^2)(j x) v2,       j = j_{nu,n}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import QuadGrid, SampledFunction
from .specfun import HalfIntOrder, jhalf, zero_table, _order
from .spectrum0 import normconst

__all__ = [
    "DiffSlice",
    "DecoupledTriple",
    "DecouplingError",
    "functional_A",
    "functional_B",
    "functionals",
    "zero_moment",
    "diff_slice",
    "diff_value",
    "decouple",
    "kappa0_kernel_test",
    "muntz_moments",
]

_DEFAULT_GRID = None


def default_grid() -> QuadGrid:
    global _DEFAULT_GRID
    if _DEFAULT_GRID is None:
        _DEFAULT_GRID = QuadGrid.uniform()
    return _DEFAULT_GRID


class DecouplingError(AssertionError):
    """The decoupled triple disagrees with the direct functionals."""


@dataclass(frozen=True)
class DiffSlice:
    """``d_{kappa,n}`` for ``n = -N..N`` (index ``n + N``)."""

    order: HalfIntOrder
    N: int
    values: np.ndarray

    @property
    def n(self):
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n):
        return float(self.values[n + self.N])


@dataclass(frozen=True)
class DecoupledTriple:
    """Zero-mode moment and the two decoupled sequences ``A_n``, ``B_n``, ``n = 1..N``."""

    m: float
    a_seq: np.ndarray
    b_seq: np.ndarray

    def __post_init__(self):
        if len(self.a_seq) != len(self.b_seq):
            raise ValueError("a_seq and b_seq differ in length")

    def to_dict(self):
        return {"m": self.m, "a_seq": np.asarray(self.a_seq).tolist(),
                "b_seq": np.asarray(self.b_seq).tolist()}


def _vals(f, g: QuadGrid):
    if f is None:
        return np.zeros(g.size)
    if isinstance(f, SampledFunction):
        return g.values(f)
    return g.values(f)


def _pair(v, g):
    if hasattr(v, "p") and hasattr(v, "q"):
        return _vals(v.p, g), _vals(v.q, g)
    v1, v2 = v
    return _vals(v1, g), _vals(v2, g)


def _kernels(order, N, g):
    k = order.kappa
    j = np.asarray(zero_table(order, max(N, 40)).zeros[:N])
    s = j[:, None] * g.nodes[None, :]
    Jm, J = jhalf(k - 1, s), jhalf(k, s)
    KA = 2.0 * s * Jm * J
    KB = s * (J * J - Jm * Jm)
    return KA, KB


def functionals(order, v, N: int, grid: QuadGrid | None = None):
    """``(A_n(v1), B_n(v2))`` for ``n = 1..N`` as two arrays."""
    order = _order(order)
    g = grid or default_grid()
    v1, v2 = _pair(v, g)
    KA, KB = _kernels(order, N, g)
    return KA @ (g.weights * v1), KB @ (g.weights * v2)


def functional_A(order, n: int, v1, grid: QuadGrid | None = None) -> float:
    """``int_0^1 2 j x J_{nu-1}(j x) J_nu(j x) v1(x) dx`` with ``j = j_{nu,n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(functionals(order, (v1, None), n, grid)[0][n - 1])


def functional_B(order, n: int, v2, grid: QuadGrid | None = None) -> float:
    """``int_0^1 j x (J_nu^2 - J_{nu-1}^2)(j x) v2(x) dx`` with ``j = j_{nu,n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(functionals(order, (None, v2), n, grid)[1][n - 1])


def zero_moment(order, v2, grid: QuadGrid | None = None) -> float:
    """Zero-mode differential ``-(2 kappa + 1) int x^{2 kappa} v2``."""
    k = _order(order).kappa
    g = grid or default_grid()
    return float(-(2 * k + 1) * g.integrate(g.nodes ** (2 * k) * _vals(v2, g)))


def diff_slice(order, v, N: int, grid: QuadGrid | None = None) -> DiffSlice:
    """Assemble ``d_{kappa,n}`` for ``|n| <= N``."""
    order = _order(order)
    g = grid or default_grid()
    A, B = functionals(order, v, N, g)
    c2 = np.array([normconst(order, n) ** 2 for n in range(1, N + 1)])
    pos = c2 * (-A + B)
    neg = c2 * (A + B)
    d0 = zero_moment(order, _pair(v, g)[1], g)
    return DiffSlice(order, N, np.concatenate([neg[::-1], [d0], pos]))


def diff_value(order, n: int, v, grid: QuadGrid | None = None) -> float:
    """Single entry ``d_{kappa,n}``."""
    N = max(abs(n), 1)
    return diff_slice(order, v, N, grid)[n]


def decouple(order, sl: DiffSlice, v=None, grid: QuadGrid | None = None,
             tol: float = 1e-10) -> DecoupledTriple:
    """``(a_0 / c_0^2, (a_{-n} - a_n) / (2 c_n^2), (a_{-n} + a_n) / (2 c_n^2))``.

    With ``v`` given, the result is compared with ``(-int x^{2 kappa} v2, A_n, B_n)``
    computed directly, and DecouplingError is raised on a gap above ``tol``.
    """
    order = _order(order)
    N = sl.N
    d = np.asarray(sl.values)
    c2 = np.array([normconst(order, n) ** 2 for n in range(1, N + 1)])
    c02 = normconst(order, 0) ** 2
    pos, neg = d[N + 1:], d[:N][::-1]
    tri = DecoupledTriple(float(d[N] / c02), (neg - pos) / (2 * c2), (neg + pos) / (2 * c2))
    if v is not None:
        g = grid or default_grid()
        A, B = functionals(order, v, N, g)
        k = order.kappa
        m = -float(g.integrate(g.nodes ** (2 * k) * _pair(v, g)[1]))
        gap = max(abs(tri.m - m), float(np.max(np.abs(tri.a_seq - A), initial=0.0)),
                  float(np.max(np.abs(tri.b_seq - B), initial=0.0)))
        if gap > tol:
            raise DecouplingError(f"decoupling gap {gap:.3e} exceeds {tol:.1e}")
    return tri


def kappa0_kernel_test(v1, v2, N: int = 20, tol: float = 1e-8,
                       grid: QuadGrid | None = None) -> dict:
    """Differential of the kappa = 0 spectrum along ``(v1, v2)`` together with its parity parts.

    The differential vanishes exactly when ``v1`` is even and ``v2`` is odd
    about x = 1/2.
    """
    g = grid or default_grid()
    a, b = _vals(v1, g), _vals(v2, g)
    sl = diff_slice(0, (a, b), N, g)
    dmax = float(np.max(np.abs(sl.values)))
    odd1 = 0.5 * (a - g.mirror(a))
    even2 = 0.5 * (b + g.mirror(b))
    parity_ok = g.norm(odd1) <= tol and g.norm(even2) <= tol
    return {"N": N, "max_abs_d": dmax, "d": sl.values.tolist(),
            "odd_part_v1": g.norm(odd1), "even_part_v2": g.norm(even2),
            "parity_respecting": bool(parity_ok), "vanishes": bool(dmax <= tol),
            "pass": bool(parity_ok == (dmax <= tol))}


def muntz_moments(v, kappas, grid: QuadGrid | None = None):
    """``(int (1 - 2 x^{2 nu}) v1, int x^{2 nu - 1} v2)`` for each ``kappa``."""
    g = grid or default_grid()
    v1, v2 = _pair(v, g)
    x = g.nodes
    out = []
    for k in kappas:
        nu = k + 0.5
        out.append((float(g.integrate((1 - 2 * x ** (2 * nu)) * v1)),
                    float(g.integrate(x ** (2 * nu - 1) * v2))))
    return out
