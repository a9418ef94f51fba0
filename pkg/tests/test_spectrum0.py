import math

import numpy as np
import pytest

from akns.grid import QuadGrid
from akns.specfun import bessel_zero, jhalf
from akns.spectrum0 import (SpectralSlice, asymptote, eigenfunction0, eigenvalues0, lommel_gap,
                            normconst, normconst_asymptotic, normconst_slope)


def test_kappa0_eigenvalues():
    sl = eigenvalues0(0, 3)
    np.testing.assert_allclose(sl.values, np.pi * np.arange(-3, 4), atol=1e-13)
    assert sl[0] == 0.0


@pytest.mark.parametrize("kappa", range(4))
def test_symmetry_and_zero_mode(kappa):
    sl = eigenvalues0(kappa, 20)
    assert sl[0] == 0.0
    np.testing.assert_array_equal(sl.values, -sl.values[::-1])
    assert sl[1] == pytest.approx(bessel_zero(kappa, 1), abs=1e-14)


def test_kappa1_first_eigenvalue():
    sl = eigenvalues0(1, 1)
    assert sl[1] == pytest.approx(4.493409457909064, abs=1e-12)


def test_slice_rejects_non_monotone():
    from akns.specfun import HalfIntOrder

    with pytest.raises(ValueError):
        SpectralSlice(HalfIntOrder(0), 1, np.array([0.0, -1.0, 1.0]))


@pytest.mark.parametrize("kappa", range(4))
def test_normconst_zero_mode(kappa):
    assert normconst(kappa, 0) == pytest.approx(math.sqrt(2 * kappa + 1), abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 7, 40, -3])
def test_normconst_kappa0(n):
    assert abs(normconst(0, n) - math.sqrt(math.pi / 2)) <= 1e-12


def test_normconst_symmetric_in_n():
    assert normconst(2, -5) == normconst(2, 5)


def test_normconst_asymptotics_kappa1_n10():
    r = abs(normconst(1, 10) ** 2 - normconst_asymptotic(1, 10))
    # next order is O(n^-4)
    assert r < 1e-4


@pytest.mark.parametrize("kappa", [1, 2, 3])
def test_normconst_slope(kappa):
    slope, _ = normconst_slope(kappa, 10, 40)
    assert abs(slope + 4) <= 0.3


@pytest.mark.parametrize("kappa", range(4))
def test_lommel(kappa):
    assert max(lommel_gap(kappa, n) for n in range(1, 21)) <= 1e-10


def test_lommel_kappa0_closed_trig_integral():
    g = QuadGrid.uniform()
    x = g.nodes
    val = g.integrate(x * jhalf(0, np.pi * x) ** 2)
    assert val == pytest.approx(1 / np.pi ** 2, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, -3])
def test_eigenfunction_kappa0_trig(n):
    f = eigenfunction0(0, n)
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(f.z1(x), np.cos(n * np.pi * x), atol=1e-12)
    np.testing.assert_allclose(f.z2(x), -np.sin(n * np.pi * x), atol=1e-12)


@pytest.mark.parametrize("kappa", range(4))
def test_eigenfunction_zero_mode(kappa):
    f = eigenfunction0(kappa, 0)
    x = np.linspace(0, 1, 7)
    np.testing.assert_allclose(f.z1(x), math.sqrt(2 * kappa + 1) * x ** kappa)
    np.testing.assert_array_equal(f.z2(x), 0.0)


@pytest.mark.parametrize("kappa, n", [(1, 1), (2, 3), (3, -2), (0, 5), (2, 0)])
def test_eigenfunction_normalised_and_boundary(kappa, n):
    g = QuadGrid.uniform()
    f = eigenfunction0(kappa, n)
    z = f(g.nodes)
    assert g.integrate(z[0] ** 2 + z[1] ** 2) == pytest.approx(1.0, abs=1e-10)
    assert abs(f.z2(1.0)) <= 1e-10


@pytest.mark.parametrize("kappa", range(4))
def test_labelling_asymptote(kappa):
    sl = eigenvalues0(kappa, 40)
    n = np.arange(1, 41)
    d = np.abs(sl.values[41:] - asymptote(kappa, n))
    assert d[-1] < d[0] or kappa == 0
    assert np.max(d) < 1.0
