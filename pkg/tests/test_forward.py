import math

import numpy as np
import pytest

from akns.forward import (Potential, ShootingState, WindowCaptureError, eigenvalues,
                          frechet_check, frechet_slice, pauli_sigma3_check, regular_solution, rhs)
from akns.grid import legendre_coeffs
from akns.specfun import jhalf
from akns.spectrum0 import eigenvalues0


@pytest.mark.parametrize(
    "kappa, V, lam, x, Z, expected",
    [
        (0, Potential.zero(), 2.0, 0.4, (1.0, 0.0), (0.0, -2.0)),
        (1, Potential.zero(), 0.0, 0.4, (0.4, 0.0), (1.0, 0.0)),
        (0, Potential.constant(q=0.7), 2.0, 0.4, (0.0, 1.0), (1.3, 0.0)),
    ],
)
def test_rhs_examples(kappa, V, lam, x, Z, expected):
    np.testing.assert_allclose(rhs(kappa, V, lam, x, Z), expected, atol=1e-15)


def test_rhs_domain():
    with pytest.raises(ValueError):
        rhs(1, Potential.zero(), 1.0, 0.0, (1.0, 0.0))


def test_shooting_state_finite():
    with pytest.raises(ValueError):
        ShootingState(0.5, (np.nan, 0.0))


@pytest.mark.parametrize("kappa", range(4))
def test_regular_solution_free_closed_form(kappa):
    lam = 3.3
    Z = regular_solution(kappa, Potential.zero(), lam)
    x = np.array([0.3, 0.7, 1.0])
    ref = np.sqrt(np.pi * lam * x / 2) * np.stack([jhalf(kappa - 1, lam * x), -jhalf(kappa, lam * x)])
    got = Z(x)
    s = got[0, 0] / ref[0, 0]
    np.testing.assert_allclose(got, s * ref, rtol=1e-8)


def test_regular_solution_kappa0_at_first_eigenvalue():
    z = regular_solution(0, Potential.zero(), math.pi)(1.0)
    np.testing.assert_allclose(z, [-1.0, 0.0], atol=1e-10)


def test_regular_solution_constant_q():
    c, lam = 0.4, 5.0
    z2 = regular_solution(0, Potential.constant(q=c), lam)(1.0)[1]
    w = math.sqrt(lam * lam - c * c)
    # Z = (cos wx, -(lam + c)/w sin wx) from Z(0) = (1, 0)
    assert z2 == pytest.approx(-(lam + c) / w * math.sin(w), rel=1e-9)


@pytest.mark.parametrize("kappa", range(4))
def test_free_eigenvalues(kappa):
    lam = eigenvalues(kappa, Potential.zero(), 20).values
    assert np.max(np.abs(lam - eigenvalues0(kappa, 20).values)) <= 1e-8


@pytest.mark.parametrize("c", [0.3, -0.8, 1.0])
def test_constant_q_oracle(c):
    n = np.arange(1, 11)
    ref = np.concatenate([-np.sqrt(n[::-1] ** 2 * np.pi ** 2 + c * c), [-c],
                          np.sqrt(n ** 2 * np.pi ** 2 + c * c)])
    lam = eigenvalues(0, Potential.constant(q=c), 10).values
    assert np.max(np.abs(lam - ref)) <= 1e-7
    assert np.all(np.diff(lam) > 0)


def test_sign_change_across_eigenvalues():
    V = Potential.legendre([0.3, -0.2], [0.5, 0.1, 0.2])
    lam = eigenvalues(1, V, 4).values
    for l in lam:
        a = regular_solution(1, V, l - 1e-6)(1.0)[1]
        b = regular_solution(1, V, l + 1e-6)(1.0)[1]
        assert a * b < 0


def test_sigma3_constant_q():
    r = pauli_sigma3_check(0, Potential.constant(q=0.3), 3)
    assert r["pass"]
    assert r["eig"][3] == pytest.approx(-0.3, abs=1e-9)
    assert r["eig_flipped"][3] == pytest.approx(0.3, abs=1e-9)


@pytest.mark.parametrize("kappa", [0, 1, 2])
def test_sigma3_random(kappa):
    cp, cq = legendre_coeffs(2, 4, 11)
    assert pauli_sigma3_check(kappa, Potential.legendre(cp, cq, 0.5), 5)["gap"] <= 1e-8


def test_window_capture_failure():
    with pytest.raises(WindowCaptureError):
        eigenvalues(0, Potential.constant(q=40.0), 3)


def test_frechet_zero_mode_constant_direction():
    r = frechet_check(0, 0, Potential.constant(q=1.0))
    assert r["formula"] == pytest.approx(-1.0, abs=1e-12)
    assert r["finite_difference"] == pytest.approx(-1.0, abs=1e-8)


@pytest.mark.parametrize("n", [1, -2, 3])
def test_frechet_constant_q_vanishes(n):
    r = frechet_check(0, n, Potential.constant(q=1.0))
    assert abs(r["finite_difference"]) <= 1e-8
    assert abs(r["formula"]) <= 1e-12


def test_frechet_random_direction_kappa1_n2():
    cp, cq = legendre_coeffs(2, 6, 5)
    r = frechet_check(1, 2, Potential.legendre(cp, cq))
    assert r["pass"] and r["rel_gap"] <= 1e-4


def test_frechet_slice_kappa2():
    cp, cq = legendre_coeffs(2, 6, 9)
    r = frechet_slice(2, Potential.legendre(cp, cq), 5)
    assert r["max_rel_gap"] <= 1e-4


def test_potential_csv(tmp_path):
    x = np.linspace(0, 1, 51)
    path = tmp_path / "v.csv"
    np.savetxt(path, np.c_[x, 0 * x + 0.3], delimiter=",", header="x,q", comments="")
    V = Potential.from_csv(path)
    assert float(V.p(0.5)) == 0.0 and float(V.q(0.5)) == pytest.approx(0.3)
    assert V.sup_norms() == (0.0, pytest.approx(0.3))
