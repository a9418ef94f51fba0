"""Trigonometric model of the (0, 1) linearised map.

Replacing ``j_{1/2,n} = n pi`` and ``j_{3/2,n} ~ (n + 1/2) pi`` in the sine and
cosine representations gives

    At_{0,n}(v) =  (2/pi) int sin(2 n pi x) v,
    At_{1,n}(v) = -(2/pi) int sin((2n+1) pi x) S_{0,1}[v],
    Bt_{0,n}(v) =  (2/pi) int cos(2 n pi x) v,
    Bt_{1,n}(v) =  (2/pi) int cos((2n+1) pi x) S_{0,1}[v],

with ``S_{0,1}[v] = v - 2 int_x^1 v / t``.  By Parseval

    |At v|^2 = (2/pi^2) (|v_odd|^2 + |P S_{0,1} v|^2 - <v, w>^2),
    w = (P S_{0,1})^* (sqrt(2) sin(pi x)),

``P`` the projection onto functions even about x = 1/2.  ``L`` below is a
left inverse of ``P S_{0,1}`` on even functions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import QuadGrid, SampledFunction, legendre_coeffs, legendre_eval
from .specfun import DomainError
from .transform import s_apply, s_star_apply

__all__ = [
    "ParityError",
    "ModelSeq",
    "default_grid",
    "model_A",
    "model_B",
    "left_inverse_L",
    "missing_mode",
    "coercivity_report",
    "left_inverse_report",
    "trig_ensemble",
    "compactness_probe",
]

_GRID = None


def default_grid() -> QuadGrid:
    """512 uniform panels (16 nodes) refined geometrically toward both ends.

    Resolves ``sin((2N+1) pi x)`` for N = 400 and the ``log x`` behaviour of
    ``S_{0,1}[v]`` at the origin.
    """
    global _GRID
    if _GRID is None:
        _GRID = QuadGrid.graded(panels=512, levels=30, nodes_per_panel=16)
    return _GRID


class ParityError(DomainError):
    """Input is not even about x = 1/2."""


@dataclass(frozen=True)
class ModelSeq:
    """Two model sequences indexed ``n = 1..N`` (index ``n - 1``)."""

    seq0: np.ndarray
    seq1: np.ndarray

    def __post_init__(self):
        for s in (self.seq0, self.seq1):
            if not np.all(np.isfinite(s)):
                raise ValueError("model sequences must be finite")

    def norm2(self) -> float:
        return float(np.sum(self.seq0 ** 2) + np.sum(self.seq1 ** 2))

    def to_dict(self):
        return {"seq0": np.asarray(self.seq0).tolist(), "seq1": np.asarray(self.seq1).tolist()}


def _vals(v, g):
    if v is None:
        return np.zeros(g.size)
    if isinstance(v, SampledFunction):
        return g.values(v)
    return g.values(v)


def _s01(vals, g):
    return s_apply(0, 1, vals, g)


def _trig_matrix(kind, freqs, x):
    f = np.sin if kind == "sin" else np.cos
    return f(np.pi * np.outer(freqs, x))


def _model(kind, sign1, v, N, g):
    a = np.asarray(g.values(v) if callable(v) or isinstance(v, SampledFunction) else v, dtype=float)
    if a.shape[-1] != g.size:
        raise ValueError(f"expected {g.size} node values, got {a.shape}")
    n = np.arange(1, N + 1)
    wv = (g.weights * a).T
    ws = (g.weights * _s01(a, g)).T
    s0 = (2 / np.pi) * _trig_matrix(kind, 2 * n, g.nodes) @ wv
    s1 = sign1 * (2 / np.pi) * _trig_matrix(kind, 2 * n + 1, g.nodes) @ ws
    if a.ndim == 1:
        return ModelSeq(s0, s1)
    return [ModelSeq(s0[:, i], s1[:, i]) for i in range(a.shape[0])]


def model_A(v, N: int, grid: QuadGrid | None = None):
    """``(At_{0,n}(v), At_{1,n}(v))`` for ``n = 1..N``; a list for a batch of node values."""
    g = grid or default_grid()
    return _model("sin", -1.0, np.zeros(g.size) if v is None else v, N, g)


def model_B(v, N: int, grid: QuadGrid | None = None):
    """``(Bt_{0,n}(v), Bt_{1,n}(v))`` for ``n = 1..N``; a list for a batch of node values."""
    g = grid or default_grid()
    return _model("cos", 1.0, np.zeros(g.size) if v is None else v, N, g)


def _even_part(a, g):
    return 0.5 * (a + g.mirror(a))


def left_inverse_L(gf, grid: QuadGrid | None = None, tol: float = 1e-10):
    """``(L g)(x) = g(x) - (x (1 - x))^{-1} int_0^x (1 - 2t) g(t) dt`` for even ``g``.

    For x > 1/2 the integral is taken as ``-int_x^1``, equal for even ``g``;
    by evenness that is the head integral at ``1 - x``, whose first panel
    treats ``log`` endpoint behaviour in closed form.  Raises ParityError when
    the odd part of ``g`` exceeds ``tol`` relative to ``g``.
    """
    g = grid or (gf.grid if isinstance(gf, SampledFunction) else default_grid())
    a = _vals(gf, g)
    odd = 0.5 * (a - g.mirror(a))
    if g.norm(odd) > tol * max(g.norm(a), 1e-300):
        raise ParityError(f"odd part {g.norm(odd):.3e} exceeds {tol:.1e} of the norm")
    x = g.nodes
    h = (1 - 2 * x) * a
    head = g.head(h, 0.0)
    integral = np.where(x <= 0.5, head, g.mirror(head))
    # the mirrored node carries 1 - x exactly, even where x rounds to 1
    out = a - integral / (x * g.mirror(x))
    return SampledFunction(g, out) if isinstance(gf, SampledFunction) else out


def missing_mode(grid: QuadGrid | None = None) -> np.ndarray:
    """``w = (P S_{0,1})^* (sqrt(2) sin(pi x)) = S*_{0,1}[sqrt(2) sin(pi x)]`` on the nodes."""
    g = grid or default_grid()
    e = np.sqrt(2.0) * np.sin(np.pi * g.nodes)  # already even, so P* = P leaves it
    return s_star_apply(0, 1, e, g)


def trig_ensemble(count: int = 200, degree: int = 8, seed: int = 42, parity=None,
                  grid: QuadGrid | None = None) -> np.ndarray:
    """Seeded test functions ``x^4 (1-x)^4 p(x)`` with ``int_0^1 v / t = 0``.

    The factor and the moment condition make ``P S_{0,1} v`` vanish at both
    ends, so its sine coefficients decay fast and N = 400 modes reach the
    Parseval identity to roundoff.  ``parity`` restricts ``p`` to even or odd
    Legendre degrees.
    """
    g = grid or default_grid()
    x = g.nodes
    c = legendre_coeffs(count, degree, seed, parity)
    bump = x ** 4 * (1 - x) ** 4
    V = bump * np.atleast_2d(legendre_eval(c, x))
    # remove the 1/t moment with an even (x(1-x))^4 correction, keeping parity
    corr = bump * (1.0 if parity != "odd" else (1 - 2 * x))
    m_v = g.integrate(V / x)
    m_c = g.integrate(corr / x)
    return V - np.outer(m_v / m_c, corr)


def coercivity_report(ensemble=None, N: int = 400, grid: QuadGrid | None = None) -> dict:
    """Parseval identity, coercivity ratio and augmented-injectivity constant over an ensemble."""
    g = grid or default_grid()
    V = trig_ensemble(grid=g) if ensemble is None else np.atleast_2d(ensemble)
    w = missing_mode(g)
    gaps, ratios, consts, lhs_all = [], [], [], []
    seqs = model_A(V, N, g)
    for v, seq in zip(V, seqs):
        lhs = seq.norm2()
        odd = 0.5 * (v - g.mirror(v))
        sev = _even_part(_s01(v, g), g)
        no2, ns2 = g.norm(odd) ** 2, g.norm(sev) ** 2
        vw = g.inner(v, w)
        rhs = 2 / np.pi ** 2 * (no2 + ns2 - vw ** 2)
        nv2 = g.norm(v) ** 2
        gaps.append(abs(lhs - rhs) / max(lhs, 1e-300) if lhs > 0 else abs(rhs))
        lhs_all.append(lhs)
        if nv2 > 0:
            ratios.append((no2 + ns2) / nv2)
            consts.append(np.sqrt(nv2) / (np.sqrt(lhs) + abs(vw)))
    return {
        "count": int(len(V)),
        "N": N,
        "max_parseval_rel_gap": float(max(gaps)) if gaps else 0.0,
        "max_model_norm2": float(max(lhs_all)) if lhs_all else 0.0,
        "min_coercivity_ratio": float(min(ratios)) if ratios else float("nan"),
        "augmented_constant": float(max(consts)) if consts else float("nan"),
        "w_norm": g.norm(w),
    }


def left_inverse_report(count: int = 200, seed: int = 42, grid: QuadGrid | None = None) -> dict:
    """``L P S_{0,1} v = v`` on even ``v`` and the bound ``|L g| <= 5 |g|`` on even ``g``."""
    g = grid or default_grid()
    x = g.nodes
    c = legendre_coeffs(count, 8, seed, "even")
    V = np.atleast_2d(legendre_eval(c, x))
    inv_gap, ratio = 0.0, 0.0
    for v in V:
        gv = _even_part(_s01(v, g), g)
        inv_gap = max(inv_gap, g.norm(left_inverse_L(gv, g) - v) / g.norm(v))
    G = np.atleast_2d(legendre_eval(legendre_coeffs(count, 8, seed + 1, "even"), x))
    for gg in G:
        ratio = max(ratio, g.norm(left_inverse_L(gg, g)) / g.norm(gg))
    return {"count": count, "max_inverse_gap": float(inv_gap), "max_norm_ratio": float(ratio),
            "bound_holds": bool(ratio <= 5.0)}


def compactness_probe(modes: int = 32, N: int = 400, grid: QuadGrid | None = None) -> dict:
    """Singular values of ``A_{1,n} - At_{1,n}`` on the first ``modes`` Legendre functions.

    ``A_{0,n}`` and ``At_{0,n}`` coincide since ``j_{1/2,n} = n pi``; only the
    kappa = 1 block differs.  Decay of the singular values is empirical
    evidence of compactness of the difference.
    """
    from .linmap import _kernels
    from .specfun import _order

    g = grid or default_grid()
    V = np.atleast_2d(legendre_eval(np.eye(modes), g.nodes))
    KA, _ = _kernels(_order(1), N, g)
    A = KA @ (g.weights * V).T
    At = np.column_stack([s.seq1 for s in model_A(V, N, g)])
    s = np.linalg.svd(A - At, compute_uv=False)
    return {"modes": modes, "N": N, "singular_values": s.tolist(),
            "decay": float(s[0] / s[-1]), "decays_by_1e3": bool(s[0] / s[-1] >= 1e3)}
