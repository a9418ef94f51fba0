import numpy as np
import pytest
from scipy.integrate import quad

from akns.grid import QuadGrid, legendre_ensemble
from akns.linmap import (DecouplingError, decouple, diff_slice, functional_A, functional_B,
                         kappa0_kernel_test, muntz_moments, zero_moment)
from akns.specfun import bessel_zero, jhalf
from akns.spectrum0 import normconst
from akns.transform import VectorKernel, t_apply

G = QuadGrid.uniform()
X = G.nodes


def test_functional_A_kappa0_sine():
    assert functional_A(0, 1, np.sin(2 * np.pi * X)) == pytest.approx(1 / np.pi, abs=1e-13)


def test_functional_B_kappa0_cosine():
    assert functional_B(0, 1, np.cos(2 * np.pi * X)) == pytest.approx(-1 / np.pi, abs=1e-13)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_kappa0_parity_zeros(n):
    even = np.cos(2 * np.pi * X) + (X - 0.5) ** 2
    odd = (X - 0.5) ** 3
    assert abs(functional_A(0, n, even)) <= 1e-13
    assert abs(functional_B(0, n, odd)) <= 1e-13


def test_functional_A_phi_form_kappa1():
    # A_n(1) = -(2/pi) int Phi_1(j x) dx, first Phi component, by adaptive quadrature
    j = bessel_zero(1, 1)
    K = VectorKernel(1)
    ref = -(2 / np.pi) * quad(lambda x: K.phi(j * x)[0], 0, 1, epsabs=1e-14)[0]
    ref_direct = quad(lambda x: 2 * j * x * jhalf(0, j * x) * jhalf(1, j * x), 0, 1, epsabs=1e-14)[0]
    assert functional_A(1, 1, np.ones_like(X)) == pytest.approx(ref_direct, abs=1e-12)
    assert ref == pytest.approx(ref_direct, abs=1e-12)


@pytest.mark.parametrize("kappa, n", [(2, 3), (1, 2), (3, 1)])
def test_functional_B_trig_form(kappa, n):
    g = QuadGrid.graded()
    v2 = legendre_ensemble(g, 1, 8, 17)[0]
    j = bessel_zero(kappa, n)
    _, T2 = t_apply(kappa, (np.zeros(g.size), v2), g)
    ref = (2 / np.pi) * g.integrate(np.cos(2 * j * g.nodes) * T2)
    assert functional_B(kappa, n, v2, g) == pytest.approx(ref, abs=1e-8)


@pytest.mark.parametrize("kappa, n", [(2, 3), (1, 1)])
def test_functional_A_trig_form(kappa, n):
    g = QuadGrid.graded()
    v1 = legendre_ensemble(g, 1, 8, 23)[0]
    j = bessel_zero(kappa, n)
    T1, _ = t_apply(kappa, (v1, np.zeros(g.size)), g)
    ref = -(2 / np.pi) * g.integrate(np.sin(2 * j * g.nodes) * T1)
    assert functional_A(kappa, n, v1, g) == pytest.approx(ref, abs=1e-8)


@pytest.mark.parametrize(
    "kappa, v2, expected",
    [(0, lambda x: np.ones_like(x), -1.0), (0, lambda x: x - 0.5, 0.0), (1, lambda x: x, -0.75)],
)
def test_zero_moment(kappa, v2, expected):
    assert zero_moment(kappa, v2(X)) == pytest.approx(expected, abs=1e-14)


def test_diff_slice_symmetries():
    v1, v2 = legendre_ensemble(G, 2, 8, 4)
    a = diff_slice(1, (v1, None), 8).values
    b = diff_slice(1, (None, v2), 8).values
    np.testing.assert_allclose(a, -a[::-1], atol=1e-14)
    assert a[8] == 0.0
    np.testing.assert_allclose(b, b[::-1], atol=1e-14)


def test_diff_slice_kappa0_constant():
    d = diff_slice(0, (None, np.ones_like(X)), 10).values
    assert d[10] == pytest.approx(-1.0, abs=1e-14)
    assert np.max(np.abs(np.delete(d, 10))) <= 1e-13


def test_diff_slice_assembly():
    v1, v2 = legendre_ensemble(G, 2, 8, 8)
    sl = diff_slice(2, (v1, v2), 4)
    c2 = normconst(2, 3) ** 2
    A, B = functional_A(2, 3, v1), functional_B(2, 3, v2)
    assert sl[3] == pytest.approx(c2 * (-A + B), abs=1e-13)
    assert sl[-3] == pytest.approx(c2 * (A + B), abs=1e-13)


@pytest.mark.parametrize("kappa", range(4))
def test_decouple_identity(kappa):
    v1, v2 = legendre_ensemble(G, 2, 8, 30 + kappa)
    sl = diff_slice(kappa, (v1, v2), 10)
    tri = decouple(kappa, sl, (v1, v2))
    assert len(tri.a_seq) == 10


def test_decouple_trivial_parts():
    v1, v2 = legendre_ensemble(G, 2, 8, 1)
    tri = decouple(1, diff_slice(1, (v1, None), 6))
    assert tri.m == 0.0 and np.max(np.abs(tri.b_seq)) <= 1e-15
    tri = decouple(1, diff_slice(1, (None, v2), 6))
    assert np.max(np.abs(tri.a_seq)) <= 1e-15


def test_decouple_detects_mismatch():
    v1, v2 = legendre_ensemble(G, 2, 8, 2)
    sl = diff_slice(1, (v1, v2), 5)
    with pytest.raises(DecouplingError):
        decouple(1, sl, (v1 + 1.0, v2))


def test_kappa0_kernel_parity_respecting():
    r = kappa0_kernel_test(np.cos(2 * np.pi * X - np.pi), X - 0.5, 20)
    assert r["parity_respecting"] and r["vanishes"] and r["pass"]
    r = kappa0_kernel_test(np.zeros_like(X), np.zeros_like(X), 20)
    assert r["max_abs_d"] == 0.0


def test_kappa0_kernel_detects_odd_part():
    r = kappa0_kernel_test(np.sin(2 * np.pi * X), np.zeros_like(X), 20)
    d = np.asarray(r["d"])
    c2 = normconst(0, 1) ** 2
    assert d[21] == pytest.approx(-c2 / np.pi, abs=1e-12)
    assert d[19] == pytest.approx(c2 / np.pi, abs=1e-12)
    assert not r["vanishes"] and r["pass"]


def test_muntz_moments():
    out = muntz_moments((np.ones_like(X), np.ones_like(X)), [0, 1, 2])
    for k, (m1, m2) in zip([0, 1, 2], out):
        nu = k + 0.5
        assert m1 == pytest.approx(1 - 2 / (2 * nu + 1), abs=1e-14)
        assert m2 == pytest.approx(1 / (2 * nu), abs=1e-14)
    assert muntz_moments((np.zeros_like(X), np.zeros_like(X)), [3]) == [(0.0, 0.0)]
