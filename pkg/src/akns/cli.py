"""Command-line entry point: ``akns <command> [flags]``.

Every command prints one JSON report (schema 1) on stdout.  Exit codes:
0 all checks pass, 1 a check fails or the numerics fail, 2 usage error,
3 unreadable or malformed input file.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import config

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputFileError(Exception):
    """An input file is missing or malformed."""


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _check(value, tol, ok) -> dict:
    return {"value": value, "tol": tol, "pass": bool(ok)}


def _le(value, tol) -> dict:
    return _check(float(value), tol, value <= tol)


def _potential(path):
    from .forward import Potential

    if path is None:
        return Potential.zero()
    try:
        return Potential.from_csv(path)
    except (OSError, ValueError) as exc:
        raise InputFileError(str(exc)) from exc


def _pair_arg(text):
    try:
        a, b = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K1,K2, got {text!r}") from None
    return a, b


def _overrides(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"--tol expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        if k not in config.TOLERANCES or isinstance(config.TOLERANCES[k], tuple):
            raise argparse.ArgumentTypeError(f"--tol: no scalar tolerance named {k!r}")
        try:
            out[k] = float(v)
        except ValueError:
            raise argparse.ArgumentTypeError(f"--tol {k}: not a number: {v!r}") from None
    return out


# ---------------------------------------------------------------- commands

def cmd_spectrum(a):
    from .spectrum0 import eigenvalues0, normconst

    sl = eigenvalues0(a.kappa, a.n)
    return {"kappa": a.kappa, "nu": a.kappa + 0.5, "n": sl.n.tolist(),
            "eigenvalues": sl.values.tolist(),
            "normconsts": [normconst(a.kappa, int(n)) for n in sl.n]}, {}


def cmd_eig(a):
    from .forward import eigenvalues

    V = _potential(a.potential)
    sl = eigenvalues(a.kappa, V, a.n)
    return sl.to_dict(), {"strictly_increasing": _check(True, "strict", bool(np.all(np.diff(sl.values) > 0)))}


def cmd_frechet(a):
    from .forward import frechet_check

    v = _potential(a.dir)
    r = frechet_check(a.kappa, a.n, v, tuple(a.eps), tol=a.tol_rel)
    return r, {"rel_gap": _le(r["rel_gap"], a.tol_rel)}


def cmd_linmap(a):
    from .grid import QuadGrid
    from .linmap import decouple, diff_slice, functionals

    v = _potential(a.dir)
    g = QuadGrid.uniform()
    res, checks = {}, {}
    for k in a.pair:
        sl = diff_slice(k, v, a.N, g)
        tri = decouple(k, sl, grid=g)
        A, B = functionals(k, v, a.N, g)
        m = -float(g.integrate(g.nodes ** (2 * k) * g.values(v.q)))
        gap = max(abs(tri.m - m), float(np.max(np.abs(tri.a_seq - A))),
                  float(np.max(np.abs(tri.b_seq - B))))
        res[f"kappa{k}"] = {"diff_slice": sl.values.tolist(), **tri.to_dict()}
        checks[f"decoupling_kappa{k}"] = _le(gap, 1e-10)
    return res, checks


def cmd_ks(a):
    from .ksum import ks_eval, ks_rate

    ev = ks_eval(a.id, a.kappa, a.x, a.X, a.z, a.N)
    out = ev.to_dict()
    checks = {"gap": _le(ev.gap, a.tol_gap)}
    if a.rate:
        ns = [n for n in (1_000, 10_000, 100_000) if n <= a.N] or [a.N]
        if len(ns) >= 2:
            out["rate"] = ks_rate(a.id, a.kappa, a.x, a.X, a.z, ns)
    return out, checks


def cmd_transform(a):
    from .grid import legendre_ensemble
    from .specfun import bessel_zeros
    from .transform import (commute_check, default_grid, inverse_check,
                            kernel_annihilation_check, kernel_equivalence_check, odesl_check)

    g = default_grid()
    k = a.kappa
    E = legendre_ensemble(g, 10, 8, a.seed).reshape(5, 2, -1)
    tol = config.TOLERANCES
    if a.check == "inverse":
        r = inverse_check(k, E, g)
        r["annihilation"] = kernel_annihilation_check(k)
        return r, {"a_s": _le(r["left_inverse_gap"], tol["operator_inverse"]),
                   "b_t": _le(r["b_t_gap"], tol["operator_inverse"]),
                   "annihilation": _check(True, "exact", r["annihilation"]["pass"])}
    if a.check == "commute":
        others = [m for m in range(k + 2) if m != k]
        gaps = {str(m): commute_check(k, m, E[:, 0], g) for m in others}
        return {"kappa": k, "gaps": gaps}, {"commute": _le(max(gaps.values()), tol["operator_inverse"])}
    if a.check == "kernel-equiv":
        lams = (1.0, 2.7, float(bessel_zeros(k, 2)[1]))
        rows = [kernel_equivalence_check(k, (p, q), lam, g) for p, q in E for lam in lams]
        gap = max(r["gap"] for r in rows)
        return {"kappa": k, "lambdas": lams, "rows": rows}, {"gap": _le(gap, tol["kernel_equivalence"])}
    rows = [odesl_check(k, m, j) for j in (1, 2) for m in range(11)
            if m != (2 * k if j == 1 else 2 * k + 1)]
    ok = all(r["pass"] for r in rows)
    return {"kappa": k, "rows": rows}, {"exact": _check(ok, "exact", ok)}


def _write_plot(path, plot):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "w", "v2"])
            for row in zip(plot["x"], plot["w"], plot["v2"]):
                w.writerow([repr(float(v)) for v in row])
    except OSError as exc:
        raise InputFileError(str(exc)) from exc


def cmd_kernel(a):
    from . import kernelode as ko

    tol = config.TOLERANCES
    pair = tuple(a.pair)
    if pair not in ko.PAIRS:
        raise argparse.ArgumentTypeError(f"unsupported pair {pair}; expected one of {ko.PAIRS}")
    if a.emit_plot and pair != (0, 3):
        raise argparse.ArgumentTypeError("--emit-plot is only available for --pair 0,3")
    if pair == (0, 1):
        r = ko.pair01_report()
        checks = {"residual": _le(r["closed_form_residual"], tol["ode_residual"]),
                  "midpoint": _check(r["midpoint_ok"], "exact", r["midpoint_ok"]),
                  "blowup": _check(r["blowup_limit"], "1/2", r["blowup_ok"]),
                  "non_l2": _check(r["l2_partial"], "1/(5 delta)", r["non_l2"]),
                  "zero_branch": _le(r["branch2_zero_sup"], tol["zero_data"])}
    elif pair == (0, 2):
        r = ko.pair02_report()
        checks = {"v1pp": _check(r["v1pp_half"], "128/5", r["v1pp_ok"]),
                  "closed_form_ratio": _check(r["closed_form_midpoint"], "128/5", r["closed_form_ratio_ok"]),
                  "residual": _le(r["closed_form_residual"], tol["ode_residual"]),
                  "blowup": _check(r["blowup_limit"], "-5/8", r["blowup_ok"]),
                  "non_l2": _check(r["l2_partial"], "growth", r["non_l2"]),
                  "zero_branch": _le(r["branch2_zero_sup"], tol["zero_data"])}
    elif pair == (1, 2):
        r = ko.pair12_report()
        checks = {"y_midpoint": _check(r["y_midpoint"], [1, 0, 48, 0], r["y_midpoint_ok"]),
                  "fo3_over_fo1": _check(r["fo3_over_fo1"], "48", r["fo3_over_fo1"] == "48"),
                  "residual": _le(r["closed_form_residual"], tol["ode_residual"]),
                  "f_reconstruction": _le(r["f_reconstruction_gap"], tol["ode_residual"]),
                  "recoveries": _check(True, "exact", r["v2_from_linear_f_is_zero"]
                                       and r["v1_from_constant_f_is_zero"]),
                  "zero_branch": _le(r["branch2_zero_sup"], tol["zero_data"])}
    else:
        r = ko.pair03_v2_run(a.delta)
        fu, fv, null = ko.pair03_v1_frobenius()
        plot = r.pop("plot")
        if a.emit_plot:
            _write_plot(a.emit_plot, plot)
            r["plot_file"] = a.emit_plot
        r["fit_u"], r["fit_v"], r["null"] = fu.to_dict(), fv.to_dict(), null
        c, rel = tol["pair03_integral"]
        val = r["integral_with_tail"]
        checks = {"int_v2_x6": _check(val, [c, rel], abs(val - c) <= rel * c),
                  "parity": _le(r["parity_gap"], 1e-6),
                  "v2_at_half": _le(abs(r["v2_at_half"]), 1e-12)}
        for name, fit in (("u", fu), ("v", fv)):
            for label, got, ref in zip("ABC", fit.as_array(), config.REFERENCE_TRIPLES[name]):
                checks[f"{label}_{name}"] = _check(float(got), {"ref": ref, "rel": tol["frobenius_rel"]},
                                                   abs(got - ref) <= tol["frobenius_rel"] * abs(ref))
        checks["null_direction"] = _check(null["smallest_singular_value"], tol["null_sigma_min"],
                                          null["smallest_singular_value"] >= tol["null_sigma_min"])
    return r, checks


def cmd_trig_model(a):
    from .trigmodel import coercivity_report, left_inverse_report, trig_ensemble

    tol = config.TOLERANCES
    co = coercivity_report(trig_ensemble(a.ensemble, seed=a.seed), N=a.modes)
    li = left_inverse_report(a.ensemble, a.seed)
    checks = {"parseval": _le(co["max_parseval_rel_gap"], tol["parseval"]),
              "coercivity_positive": _check(co["min_coercivity_ratio"], "> 0",
                                            co["min_coercivity_ratio"] > 0),
              "left_inverse": _le(li["max_inverse_gap"], tol["left_inverse"]),
              "bound": _le(li["max_norm_ratio"], tol["left_inverse_bound"])}
    return {"coercivity": co, "left_inverse": li}, checks


def cmd_verify(a):
    from .verify import CRITERIA, verify_all

    if a.which == ["all"]:
        which = None
    else:
        try:
            which = [int(w) for w in a.which]
        except ValueError:
            raise argparse.ArgumentTypeError("verify expects 'all' or criterion numbers") from None
        bad = [w for w in which if w not in CRITERIA]
        if bad:
            raise argparse.ArgumentTypeError(f"unknown criteria {bad}")
    reps = verify_all(which, _overrides(a.tol))
    if a.no_timing:
        for r in reps:
            r.pop("runtime")
            if "runtime" in r["checks"]:
                r["checks"]["runtime"]["value"] = None
    checks = {f"criterion_{r['id']}": _check(r["name"], "all checks", r["pass"]) for r in reps}
    return {"criteria": reps}, checks


COMMANDS = {
    "spectrum": cmd_spectrum,
    "eig": cmd_eig,
    "frechet": cmd_frechet,
    "linmap": cmd_linmap,
    "ks": cmd_ks,
    "transform": cmd_transform,
    "kernel": cmd_kernel,
    "trig-model": cmd_trig_model,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--no-timing", action="store_true",
                        help="omit wall time so identical runs give identical output")
    p = argparse.ArgumentParser(prog="akns", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("spectrum", help="unperturbed eigenvalues and normalisation constants")
    s.add_argument("--kappa", type=int, required=True)
    s.add_argument("--n", type=int, default=40)

    s = add("eig", help="eigenvalues for a potential (CSV x,p,q or x,q)")
    s.add_argument("--kappa", type=int, required=True)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--potential")

    s = add("frechet", help="finite differences against the differential formula")
    s.add_argument("--kappa", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dir", required=True, help="direction CSV x,v1,v2")
    s.add_argument("--eps", type=float, nargs=2, default=(1e-3, 1e-4))
    s.add_argument("--tol-rel", type=float, default=config.TOLERANCES["frechet_rel"])

    s = add("linmap", help="decoupled triples of the linearised map")
    s.add_argument("--pair", type=_pair_arg, required=True)
    s.add_argument("--dir", required=True, help="direction CSV x,v1,v2")
    s.add_argument("--N", type=int, default=10)

    s = add("ks", help="one Kneser-Sommerfeld evaluation")
    s.add_argument("--id", required=True,
                   choices=["classic", "nu_one", "mixed_xX", "mixed_Xx", "corollary"])
    s.add_argument("--kappa", type=int, required=True)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--X", type=float, default=None)
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--N", type=int, default=100_000)
    s.add_argument("--rate", action="store_true", help="also report the convergence slope")
    s.add_argument("--tol-gap", type=float, default=config.TOLERANCES["ks_gap"])

    s = add("transform", help="transformation-operator checks")
    s.add_argument("--kappa", type=int, required=True)
    s.add_argument("--check", required=True, choices=["inverse", "commute", "kernel-equiv", "odesl"])
    s.add_argument("--seed", type=int, default=config.SEED)

    s = add("kernel", help="kernel-characterisation ODE report for one pair")
    s.add_argument("--pair", type=_pair_arg, required=True)
    s.add_argument("--emit-plot", metavar="CSV", help="(0,3) only: write columns x,w,v2")
    s.add_argument("--delta", type=float, default=1e-5)

    s = add("trig-model", help="Parseval identity, coercivity and left inverse")
    s.add_argument("--ensemble", type=int, default=200)
    s.add_argument("--modes", type=int, default=400)
    s.add_argument("--seed", type=int, default=config.SEED)

    s = add("verify", help="acceptance criteria ('all' or numbers)")
    s.add_argument("which", nargs="+")
    s.add_argument("--tol", action="append", metavar="KEY=VALUE",
                   help="override an entry of the tolerance table")
    return p


def _inputs(a) -> dict:
    return {k: v for k, v in vars(a).items() if k not in ("command", "out", "no_timing")}


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command == "ks" and a.X is None:
        a.X = a.x
    t0 = time.perf_counter()
    try:
        result, checks = COMMANDS[a.command](a)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"akns: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputFileError as exc:
        print(f"akns: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, RuntimeError, ValueError, KeyError) as exc:
        report = {"schema": config.SCHEMA, "command": a.command, "inputs": _inputs(a),
                  "pass": False, "error": f"{type(exc).__name__}: {exc}"}
        print(json.dumps(_jsonable(report), indent=2))
        return EXIT_FAIL
    ok = all(c["pass"] for c in checks.values())
    report = {"schema": config.SCHEMA, "command": a.command, "inputs": _inputs(a),
              "pass": ok, "checks": checks, "result": result}
    if not a.no_timing:
        report["wall_time"] = time.perf_counter() - t0
    text = json.dumps(_jsonable(report), indent=2)
    if a.out:
        try:
            with open(a.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"akns: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
