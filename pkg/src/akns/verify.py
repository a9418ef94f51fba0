"""One check per acceptance criterion, each returning a JSON-ready report.

Every report has ``id``, ``name``, ``pass``, ``checks`` (name -> dict with
``value``, ``tol`` and ``pass``) and ``runtime``.  A criterion passes when all
of its checks pass.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.optimize import brentq

from . import config
from .forward import Potential, eigenvalues, frechet_slice, pauli_sigma3_check
from .grid import legendre_coeffs, legendre_ensemble, legendre_eval
from .kernelode import (build_symmetry_ode, indicial_roots, pair01_report, pair02_report,
                        pair03_midpoint_data, pair03_v1_frobenius, pair03_v2_run,
                        pair12_report, zero_data_sup)
from .ksum import IDENTITIES, draw_parameters, ks_eval, ks_rate
from .linmap import kappa0_kernel_test
from .specfun import bessel_zeros, jhalf
from .spectrum0 import eigenvalues0, lommel_gap, normconst, normconst_slope
from .transform import (default_grid as transform_grid, inverse_check,
                        kernel_annihilation_check, kernel_equivalence_check, odesl_check)
from .trigmodel import coercivity_report, left_inverse_report

__all__ = ["CRITERIA", "run_criterion", "verify_all"]


def _check(value, tol, ok) -> dict:
    return {"value": value, "tol": tol, "pass": bool(ok)}


def _le(value, tol) -> dict:
    return _check(float(value), tol, value <= tol)


def _within(value, centre, half_width) -> dict:
    return _check(float(value), [centre, half_width], abs(value - centre) <= half_width)


def _rel_within(value, ref, rel) -> dict:
    return _check(float(value), {"ref": ref, "rel": rel}, abs(value - ref) <= rel * abs(ref))


def _runtime(n, elapsed) -> dict | None:
    lim = config.RUNTIME_LIMITS.get(n)
    return None if lim is None else _le(elapsed, lim)


def _match_roots(got, expected):
    """Largest distance after greedy nearest matching; inf on a count mismatch."""
    got = list(np.asarray(got, complex))
    if len(got) != len(expected):
        return math.inf
    worst = 0.0
    for e in expected:
        i = int(np.argmin([abs(g - e) for g in got]))
        worst = max(worst, abs(got.pop(i) - e))
    return worst


# ---------------------------------------------------------------- criteria

def criterion_1(tol) -> dict:
    z = np.linspace(0.1, 50.0, 50)
    closed = np.sqrt(2 / (np.pi * z)) * np.sin(z)
    n = np.arange(1, 41)
    oracle = brentq(lambda s: math.sin(s) - s * math.cos(s), math.pi + 1e-9, 1.5 * math.pi - 1e-9,
                    xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return {
        "j_half_closed_form": _le(np.max(np.abs(jhalf(0, z) - closed)), tol["bessel_closed_form"]),
        "zeros_n_pi": _le(np.max(np.abs(bessel_zeros(0, 40) - n * np.pi)), tol["zero_abs"]),
        "j_three_halves_first_zero": _le(abs(bessel_zeros(1, 1)[0] - oracle), tol["zero_abs"]),
    }


def criterion_2(tol) -> dict:
    lommel = max(lommel_gap(k, n) for k in range(4) for n in range(1, 21))
    c0 = max(abs(normconst(0, n) - math.sqrt(math.pi / 2)) for n in range(1, 41))
    centre, hw = tol["normconst_slope"]
    out = {"lommel": _le(lommel, tol["lommel"]), "c0_sqrt_half_pi": _le(c0, tol["normconst"])}
    for k in (1, 2, 3):
        out[f"c2_slope_kappa{k}"] = _within(normconst_slope(k, 10, 40)[0], centre, hw)
    return out


def criterion_3(tol) -> dict:
    free = 0.0
    for k in range(4):
        lam = eigenvalues(k, Potential.zero(), 20).values
        free = max(free, float(np.max(np.abs(lam - eigenvalues0(k, 20).values))))
    c = 0.3
    n = np.arange(1, 21)
    ref = np.concatenate([-np.sqrt(n[::-1] ** 2 * np.pi ** 2 + c * c), [-c],
                          np.sqrt(n ** 2 * np.pi ** 2 + c * c)])
    cq = float(np.max(np.abs(eigenvalues(0, Potential.constant(q=c), 20).values - ref)))
    cp = legendre_coeffs(2, 4, config.SEED)
    V = Potential.legendre(cp[0], cp[1], 0.5)
    s3 = max(pauli_sigma3_check(k, V, 5)["gap"] for k in (0, 1, 2))
    return {"free_spectrum": _le(free, tol["eig_free"]),
            "constant_q": _le(cq, tol["eig_constant_q"]),
            "sigma3_symmetry": _le(s3, tol["sigma3"])}


def frechet_directions(count: int = 10, seed: int = config.SEED):
    cp = legendre_coeffs(count, 6, seed)
    cq = legendre_coeffs(count, 6, seed + 1)
    return [Potential.legendre(a, b) for a, b in zip(cp, cq)]


def criterion_4(tol) -> dict:
    worst = {}
    for k in (0, 1, 2):
        worst[k] = max(frechet_slice(k, v, 5, tol=tol["frechet_rel"])["max_rel_gap"]
                       for v in frechet_directions())
    return {f"kappa{k}": _le(g, tol["frechet_rel"]) for k, g in worst.items()}


def criterion_5(tol) -> dict:
    centre, hw = tol["ks_slope"]
    out = {}
    for ident in IDENTITIES:
        gaps, slopes = [], []
        for k, x, X, z in draw_parameters(ident, 20, config.SEED):
            gaps.append(ks_eval(ident, k, x, X, z, 100_000).gap)
            slopes.append(ks_rate(ident, k, x, X, z)["slope"])
        out[f"{ident}_gap"] = _le(max(gaps), tol["ks_gap"])
        s = np.asarray(slopes)
        bad = np.abs(s - centre) > hw
        out[f"{ident}_slope"] = _check(
            {"min": float(np.nanmin(s)), "max": float(np.nanmax(s)),
             "median": float(np.nanmedian(s)), "outside": int(np.sum(bad))},
            [centre, hw], not np.any(bad))
    return out


def criterion_6(tol) -> dict:
    g = transform_grid()
    E = legendre_ensemble(g, 10, 8, config.SEED).reshape(5, 2, -1)
    inv = [inverse_check(k, E, g) for k in range(4)]
    lams = lambda k: (1.0, 2.7, float(bessel_zeros(k, 2)[1]))  # noqa: E731
    eq = 0.0
    for k in range(4):
        for p, q in E:
            for lam in lams(k):
                eq = max(eq, kernel_equivalence_check(k, (p, q), lam, g)["gap"])
    odesl = all(odesl_check(k, m, j)["pass"]
                for k in range(4) for j in (1, 2) for m in range(11)
                if m != (2 * k if j == 1 else 2 * k + 1))
    return {
        "a_s_identity": _le(max(r["left_inverse_gap"] for r in inv), tol["operator_inverse"]),
        "b_t_identity": _le(max(r["b_t_gap"] for r in inv), tol["operator_inverse"]),
        "kernel_annihilation_exact": _check(True, "exact", kernel_annihilation_check(3)["pass"]),
        "bessel_trig_equivalence": _le(eq, tol["kernel_equivalence"]),
        "odesl_exact": _check(odesl, "exact", odesl),
    }


INDICIAL_SETS = {
    "pair02": [-1, 1, 3, 4],
    "pair12": [-2, 0, 2, 3],
    "pair03": [7, 6, 5, 3, 1, -1, complex(-1, math.sqrt(23)), complex(-1, -math.sqrt(23))],
}


def criterion_7(tol) -> dict:
    r01, r02, r12 = pair01_report(), pair02_report(), pair12_report()
    out = {}
    for name, r in (("pair01", r01), ("pair02", r02), ("pair12", r12)):
        out[f"{name}_closed_form_residual"] = _le(r["closed_form_residual"], tol["ode_residual"])
    roots = {"pair02": indicial_roots(build_symmetry_ode((0, 2), 1), 0),
             "pair12": indicial_roots(build_symmetry_ode((1, 2), 1), 0),
             "pair03": indicial_roots(build_symmetry_ode((0, 3), 2), 0)}
    for name, exp in INDICIAL_SETS.items():
        out[f"{name}_indicial"] = _le(_match_roots(roots[name], exp), tol["indicial"])
    mid = {"pair02_128_over_5": r02["v1pp_ok"] and r02["closed_form_ratio_ok"],
           "pair12_48": r12["fo3_over_fo1"] == "48" and r12["y_midpoint_ok"],
           "pair03_minus_132": pair03_midpoint_data(2)["matches_table"]}
    for name, ok in mid.items():
        out[f"midpoint_{name}"] = _check(bool(ok), "exact", ok)
    zero = [r01["branch2_zero_sup"], r02["branch2_zero_sup"], r12["branch2_zero_sup"]]
    zero += [zero_data_sup(build_symmetry_ode(p, j, crosscheck=False))
             for p in ((0, 1), (0, 2), (1, 2), (0, 3)) for j in (1, 2) if (p, j) != ((0, 1), 2)]
    out["zero_data"] = _le(max(zero), tol["zero_data"])
    return out


def criterion_8(tol) -> dict:
    run = pair03_v2_run(1e-5)
    fu, fv, null = pair03_v1_frobenius()
    centre, rel = tol["pair03_integral"]
    out = {"int_v2_x6": _check(run["integral_with_tail"], [centre, rel],
                               abs(run["integral_with_tail"] - centre) <= rel * centre)}
    for name, fit in (("u", fu), ("v", fv)):
        for label, got, ref in zip("ABC", fit.as_array(), config.REFERENCE_TRIPLES[name]):
            out[f"{label}_{name}"] = _rel_within(got, ref, tol["frobenius_rel"])
    out["null_direction"] = _check(null["smallest_singular_value"], tol["null_sigma_min"],
                                   null["smallest_singular_value"] >= tol["null_sigma_min"])
    return out


def criterion_9(tol) -> dict:
    li = left_inverse_report(200, config.SEED)
    co = coercivity_report()
    return {
        "left_inverse": _le(li["max_inverse_gap"], tol["left_inverse"]),
        "bound": _le(li["max_norm_ratio"], tol["left_inverse_bound"]),
        "parseval": _le(co["max_parseval_rel_gap"], tol["parseval"]),
        "coercivity_positive": _check(co["min_coercivity_ratio"], "> 0",
                                      co["min_coercivity_ratio"] > 0),
    }


def criterion_10(tol) -> dict:
    g = None
    from .linmap import default_grid

    g = default_grid()
    x = g.nodes
    V1 = legendre_ensemble(g, 5, 8, config.SEED, "even")
    V2 = legendre_ensemble(g, 5, 8, config.SEED + 1, "odd")
    kern = max(kappa0_kernel_test(a, b, 20, tol["parity_kernel"], g)["max_abs_d"]
               for a, b in zip(V1, V2))
    c = legendre_coeffs(1, 8, config.SEED + 2, "odd")[0]
    det = kappa0_kernel_test(V1[0] + 0.1 * legendre_eval(c, x), V2[0], 20,
                             tol["parity_kernel"], g)["max_abs_d"]
    return {"parity_respecting": _le(kern, tol["parity_kernel"]),
            "odd_part_detected": _check(det, tol["parity_detect"], det > tol["parity_detect"])}


CRITERIA = {
    1: ("special functions", criterion_1),
    2: ("normalisation constants", criterion_2),
    3: ("forward solver", criterion_3),
    4: ("Frechet differential", criterion_4),
    5: ("Kneser-Sommerfeld identities", criterion_5),
    6: ("transformation operators", criterion_6),
    7: ("kernel ODE suite", criterion_7),
    8: ("(0,3) numerics", criterion_8),
    9: ("trigonometric model", criterion_9),
    10: ("kappa = 0 parity kernel", criterion_10),
}


def run_criterion(n: int, overrides: dict | None = None) -> dict:
    """Run criterion ``n`` and return its report."""
    if n not in CRITERIA:
        raise KeyError(f"no criterion {n}; expected 1..{len(CRITERIA)}")
    name, fn = CRITERIA[n]
    tol = config.tolerances(overrides)
    t0 = time.perf_counter()
    checks = fn(tol)
    elapsed = time.perf_counter() - t0
    rt = _runtime(n, elapsed)
    if rt is not None:
        checks["runtime"] = rt
    return {"id": n, "name": name, "pass": all(c["pass"] for c in checks.values()),
            "checks": checks, "runtime": elapsed}


def verify_all(which=None, overrides: dict | None = None, workers: int | None = None) -> list:
    """Reports for the selected criteria (default: all), in criterion order.

    Runtime-limited criteria run alone so their timings are not inflated by
    concurrent work; the rest fan out over ``workers`` threads.
    """
    ids = sorted(CRITERIA) if which is None else sorted(set(which))
    workers = workers or config.threads()
    timed = [n for n in ids if n in config.RUNTIME_LIMITS]
    rest = [n for n in ids if n not in config.RUNTIME_LIMITS]
    out = {n: run_criterion(n, overrides) for n in timed}
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        for n, rep in zip(rest, ex.map(lambda m: run_criterion(m, overrides), rest)):
            out[n] = rep
    return [out[n] for n in ids]
