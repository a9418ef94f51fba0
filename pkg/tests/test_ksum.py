import math

import numpy as np
import pytest

from akns.ksum import (IDENTITIES, PoleProximityError, draw_parameters, ks_eval, ks_pole_check,
                       ks_rate, ks_rhs, ks_symmetry_gap, ks_terms)
from akns.specfun import DomainError


def test_classic_half_order_closed_trig():
    # nu = 1/2, x = X = 1/2, z = 1: RHS from J_{1/2}, Y_{1/2} = -cos-form, by hand
    x = 0.5
    J = lambda s: math.sqrt(2 / (math.pi * s)) * math.sin(s)  # noqa: E731
    Y = lambda s: -math.sqrt(2 / (math.pi * s)) * math.cos(s)  # noqa: E731
    ref = math.pi / (4 * J(1)) * J(x) * (J(1) * Y(x) - Y(1) * J(x))
    assert ks_rhs("classic", 0, x, x, 1.0) == pytest.approx(ref, rel=1e-14)
    ev = ks_eval("classic", 0, x, x, 1.0, 100_000)
    assert ev.gap <= 1e-3


def test_classic_half_order_series_terms():
    # j_n = n pi and J'(j_n) = J_{-1/2}(n pi) = sqrt(2/(n pi^2)) (-1)^n
    x, z = 0.3, 1.7
    n = np.arange(1, 51)
    j = n * np.pi
    Jx = np.sqrt(2 / (np.pi * j * x)) * np.sin(j * x)
    ref = Jx * Jx / ((z * z - j * j) * 2 / (np.pi * j))
    np.testing.assert_allclose(ks_terms("classic", 0, x, x, z, 50), ref, rtol=1e-12, atol=1e-16)


def test_nu_one_example():
    ev = ks_eval("nu_one", 1, 0.3, 0.8, 2.5, 100_000)
    assert ev.gap <= ev.tail_estimate
    assert ev.gap <= 1e-3


@pytest.mark.parametrize("ident", IDENTITIES)
def test_seeded_draws(ident):
    for k, x, X, z in draw_parameters(ident, 20):
        assert ks_eval(ident, k, x, X, z, 100_000).gap <= 1e-3


@pytest.mark.parametrize("ident", IDENTITIES)
def test_gap_decreasing(ident):
    k, x, X, z = draw_parameters(ident, 1, 7)[0]
    assert ks_rate(ident, k, x, X, z)["decreasing"]


def test_corollary_at_one_is_exact():
    # every term carries J_nu(j_n) = 0
    for k in range(4):
        ev = ks_eval("corollary", k, 1.0, 1.0, 2.2, 2000)
        assert abs(ev.lhs) <= 1e-13
        assert ev.gap <= 1e-9


def test_degenerate_rate_is_flat():
    r = ks_rate("classic", 1, 1.0, 1.0, 2.2)
    assert max(r["gaps"]) <= 1e-12
    assert math.isnan(r["slope"])


def test_symmetry_consistency():
    for k in range(4):
        assert ks_symmetry_gap(k, 0.37, 3.3, 20_000) <= 1e-10


@pytest.mark.parametrize("ident", IDENTITIES)
@pytest.mark.parametrize("x, X", [(0.25, 0.6), (0.3, 0.9)])
def test_pole_structure(ident, x, X):
    # sample points where the first-term residue is O(1), not near a zero of the numerator
    r = ks_pole_check(ident, 1, x, x if ident == "corollary" else X)
    assert r["rel_gap"] <= 0.1


def test_errors():
    with pytest.raises(PoleProximityError):
        ks_eval("classic", 0, 0.5, 0.5, math.pi + 1e-4, 100)
    with pytest.raises(DomainError):
        ks_eval("classic", 0, 0.8, 0.5, 1.0, 100)
    with pytest.raises(DomainError):
        ks_eval("nope", 0, 0.5, 0.5, 1.0, 100)
    with pytest.raises(DomainError):
        ks_eval("classic", 0, 0.5, 0.5, 0.0, 100)
    with pytest.raises(ValueError):
        ks_rate("classic", 0, 0.5, 0.5, 1.0, [100, 10])


def test_rate_is_at_least_first_order():
    # the measured convergence is faster than the n^-1 tail bound
    r = ks_rate("nu_one", 2, 0.3, 0.8, 2.5)
    assert r["slope"] <= -0.8


def test_evaluation_record():
    d = ks_eval("mixed_xX", 2, 0.2, 0.6, 4.1, 1000).to_dict()
    assert d["identity_id"] == "mixed_xX" and d["nu"] == 2.5 and d["N"] == 1000


@pytest.mark.parametrize("kappa", [0, 1, 2])
def test_rate_first_order_on_diagonal(kappa):
    # at x = X the terms keep one sign and the tail decays exactly like N^-1;
    # off the diagonal they oscillate and the gap falls faster
    assert abs(ks_rate("classic", kappa, 0.4, 0.4, 2.2)["slope"] + 1) <= 0.2
    assert ks_rate("classic", kappa, 0.4, 0.7, 2.2)["slope"] <= -1.8
