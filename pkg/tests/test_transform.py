from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from akns.grid import QuadGrid, legendre_ensemble
from akns.specfun import DomainError, bessel_zero
from akns.transform import (PolyFunction, ResonanceError, VectorKernel, a_inverse, b_apply,
                            commute_check, default_grid, inverse_check,
                            kernel_annihilation_check, kernel_equivalence_check, odesl_check,
                            phi_reduction_check, s_apply, s_star_apply, t_apply, t_star_apply)

G = default_grid()
X = G.nodes
M = PolyFunction.monomial


def test_s_grid_kappa0_j2_on_x():
    np.testing.assert_allclose(s_apply(0, 2, X, G), X * (1 + 2 * np.log(X)), rtol=1e-12, atol=1e-15)


def test_s_of_zero():
    assert s_apply(0, 1, PolyFunction()).is_zero()
    np.testing.assert_array_equal(s_apply(1, 1, np.zeros(G.size), G), 0.0)


def test_s_poly_monomial_rule():
    assert s_apply(1, 1, M(3)) == PolyFunction({3: 7, 2: -6})


def test_s_poly_resonance():
    with pytest.raises(ResonanceError):
        s_apply(1, 1, M(2))
    with pytest.raises(ResonanceError):
        s_apply(1, 2, M(3))


@pytest.mark.parametrize("kappa", range(4))
def test_s_star_kernel(kappa):
    assert s_star_apply(kappa, 2, M(2 * kappa)).is_zero()
    assert s_star_apply(kappa, 1, M(2 * kappa + 1)).is_zero()


@pytest.mark.parametrize("kappa, j", [(0, 1), (1, 2), (2, 1), (3, 2)])
def test_poly_and_grid_backends_agree(kappa, j):
    res = 2 * kappa if j == 1 else 2 * kappa + 1
    coeffs = {0: Fraction(1, 3), 1: 2, 10: -1}
    f = PolyFunction({m: c for m, c in coeffs.items() if m != res})
    np.testing.assert_allclose(s_apply(kappa, j, f(X), G), s_apply(kappa, j, f)(X), rtol=1e-9,
                               atol=1e-9)
    np.testing.assert_allclose(s_star_apply(kappa, j, f(X), G), s_star_apply(kappa, j, f)(X),
                               rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("kappa", range(4))
@pytest.mark.parametrize("j", [1, 2])
def test_adjoint_pairing(kappa, j):
    f, g = legendre_ensemble(G, 2, 8, 100 + kappa)
    lhs = G.inner(s_apply(kappa, j, f, G), g)
    rhs = G.inner(f, s_star_apply(kappa, j, g, G))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_t_kappa0_is_minus_identity():
    p, q = legendre_ensemble(G, 2, 8, 1)
    T1, T2 = t_apply(0, (p, q), G)
    np.testing.assert_array_equal(T1, -p)
    np.testing.assert_array_equal(T2, -q)
    z = np.zeros(G.size)
    T1, T2 = t_apply(1, (z, z), G)
    assert np.all(T1 == 0) and np.all(T2 == 0)


@pytest.mark.parametrize("kappa", range(4))
def test_inverse_identities(kappa):
    E = legendre_ensemble(G, 10, 8, 7).reshape(5, 2, -1)
    r = inverse_check(kappa, E, G)
    assert r["left_inverse_gap"] <= 1e-9
    assert r["b_t_gap"] <= 1e-9


def test_a_inverse_on_polynomials():
    p, q = PolyFunction.from_list([1, 0, 0, 4]), PolyFunction.from_list([0, 0, 2, 0, 1])
    a1, a2 = a_inverse(1, (s_apply(1, 1, p), s_apply(1, 2, q)))
    assert a1 == p and a2 == q


def test_b_t_polynomial_exact():
    p, q = PolyFunction.from_list([0, 0, 0, 0, 0, 0, 0, 1]), PolyFunction.from_list([0, 0, 0, 0, 0, 0, 0, 0, 3])
    T = t_apply(2, (p, q))
    assert b_apply(2, T) == (p, q)


@pytest.mark.parametrize("k, m", [(0, 1), (1, 3), (2, 0)])
def test_commute(k, m):
    E = legendre_ensemble(G, 4, 8, 5)
    assert commute_check(k, m, E, G) <= 1e-9


def test_kernel_annihilation():
    assert kernel_annihilation_check(3)["pass"]


@pytest.mark.parametrize("kappa", range(4))
def test_t_star_kills_lower_kernels(kappa):
    for k in range(kappa):
        t1, _ = t_star_apply(kappa, (M(2 * k + 1), PolyFunction()))
        _, t2 = t_star_apply(kappa, (PolyFunction(), M(2 * k)))
        assert t1.is_zero() and t2.is_zero()


@pytest.mark.parametrize("kappa", range(4))
@pytest.mark.parametrize("lam", [1.0, 2.7, None])
def test_kernel_equivalence(kappa, lam):
    lam = bessel_zero(kappa, 2) if lam is None else lam
    for p, q in legendre_ensemble(G, 10, 8, 50 + kappa).reshape(5, 2, -1):
        assert kernel_equivalence_check(kappa, (p, q), lam, G)["gap"] <= 1e-8


def test_kernel_equivalence_kappa0_trig():
    # Phi_0(s) = -(sin 2s, cos 2s) reduces the identity to -int (sin, cos).(p, q) on both sides
    K = VectorKernel(0)
    s = np.linspace(0.1, 5, 20)
    np.testing.assert_allclose(K.phi(s), -np.stack([np.sin(2 * s), np.cos(2 * s)]), atol=1e-14)
    np.testing.assert_allclose(K.psi(s), -np.stack([np.cos(2 * s), -np.sin(2 * s)]), atol=1e-14)


def test_kernel_equivalence_lambda_zero():
    p, q = legendre_ensemble(G, 2, 8, 3)
    r = kernel_equivalence_check(1, (p, q), 0.0, G)
    assert r["gap"] <= 1e-12


@pytest.mark.parametrize("kappa", range(4))
@pytest.mark.parametrize("j", [1, 2])
def test_odesl_exact(kappa, j):
    res = 2 * kappa if j == 1 else 2 * kappa + 1
    for m in range(11):
        if m != res:
            assert odesl_check(kappa, m, j)["pass"]


def test_odesl_example_kappa0_m2():
    # S_{0,1}[x^2] = 2x^2 - 1; g' = 4x and 2/x (x^2) + 2x = 4x
    r = odesl_check(0, 2, 1)
    assert r["pass"]
    assert s_apply(0, 1, M(2)) == PolyFunction({2: 2, 0: -1})


@pytest.mark.parametrize("kappa", [0, 1, 2])
def test_phi_reduction(kappa):
    lams = (1.0, 2.7, bessel_zero(kappa, 1))
    r = phi_reduction_check(kappa, lams=lams, grid=G)
    assert r["gap"] <= 1e-8
    near1 = phi_reduction_check(kappa, x_samples=[0.99, 0.999], grid=G)
    assert near1["gap"] <= 1e-8


def test_phi_reduction_domain():
    with pytest.raises(DomainError):
        phi_reduction_check(3)


def test_kernel_domain():
    with pytest.raises(DomainError):
        VectorKernel(1).phi(np.array([0.0, 1.0]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 12), st.sampled_from([1, 2]))
def test_property_odesl(kappa, m, j):
    if m == (2 * kappa if j == 1 else 2 * kappa + 1):
        return
    assert odesl_check(kappa, m, j)["pass"]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=9))
def test_property_left_inverse_exact(coeffs):
    f = PolyFunction.from_list(coeffs)
    for k in range(3):
        f1 = PolyFunction({m: c for m, c in f.coeffs.items() if m != 2 * k})
        f2 = PolyFunction({m: c for m, c in f.coeffs.items() if m != 2 * k + 1})
        a1, a2 = a_inverse(k, (s_apply(k, 1, f1), s_apply(k, 2, f2)))
        assert a1 == f1 and a2 == f2


def test_graded_grid_default():
    assert isinstance(default_grid(), QuadGrid)
