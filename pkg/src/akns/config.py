"""Default tolerances and run parameters, shared by the verifier and the CLI."""
from __future__ import annotations

import os

SEED = 42
SCHEMA = 1

TOLERANCES = {
    # special functions
    "bessel_closed_form": 1e-12,
    "zero_abs": 1e-10,
    # normalisation
    "lommel": 1e-10,
    "normconst": 1e-10,
    "normconst_slope": (-4.0, 0.3),
    # forward solver
    "eig_free": 1e-8,
    "eig_constant_q": 1e-7,
    "sigma3": 1e-8,
    "frechet_rel": 1e-4,
    # Kneser-Sommerfeld sums
    "ks_gap": 1e-3,
    "ks_slope": (-1.0, 0.2),
    # transformation operators
    "operator_inverse": 1e-9,
    "kernel_equivalence": 1e-8,
    # kernel ODEs
    "ode_residual": 1e-8,
    "indicial": 1e-6,
    "zero_data": 1e-12,
    "pair03_integral": (0.16, 0.10),
    "frobenius_rel": 0.10,
    "null_sigma_min": 1e-4,
    # trigonometric model
    "left_inverse": 1e-10,
    "left_inverse_bound": 5.0,
    "parseval": 1e-8,
    # parity kernel
    "parity_kernel": 1e-8,
    "parity_detect": 1e-3,
}

RUNTIME_LIMITS = {1: 1.0, 4: 60.0, 8: 120.0}

REFERENCE_TRIPLES = {
    "u": (0.700136, -0.0937512, -0.0416037),
    "v": (0.00529329, 0.00201729, -0.00117865),
}


def tolerances(overrides: dict | None = None) -> dict:
    """The tolerance table with ``overrides`` applied; unknown keys are rejected."""
    out = dict(TOLERANCES)
    for k, v in (overrides or {}).items():
        if k not in out:
            raise KeyError(f"unknown tolerance {k!r}")
        out[k] = v
    return out


def threads() -> int:
    """Worker cap from ``AKNS_THREADS`` (default: CPU count)."""
    raw = os.environ.get("AKNS_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"AKNS_THREADS must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"AKNS_THREADS must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1
