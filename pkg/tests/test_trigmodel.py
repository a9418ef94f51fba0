import numpy as np
import pytest

from akns.grid import QuadGrid
from akns.trigmodel import (ModelSeq, ParityError, coercivity_report, compactness_probe,
                            default_grid, left_inverse_L, left_inverse_report, missing_mode,
                            model_A, model_B, trig_ensemble)

G = default_grid()
X = G.nodes


def test_model_A_sine():
    s = model_A(np.sin(2 * np.pi * X), 3)
    np.testing.assert_allclose(s.seq0, [1 / np.pi, 0, 0], atol=1e-13)


def test_model_B_cosine():
    s = model_B(np.cos(2 * np.pi * X), 3)
    np.testing.assert_allclose(s.seq0, [1 / np.pi, 0, 0], atol=1e-13)


def test_parity_zeros():
    even = (X - 0.5) ** 2 + np.cos(4 * np.pi * X)
    odd = (X - 0.5) ** 3
    assert np.max(np.abs(model_A(even, 20).seq0)) <= 1e-13
    assert np.max(np.abs(model_B(odd, 20).seq0)) <= 1e-13


def test_zero_input():
    s = model_A(None, 5)
    assert s.norm2() == 0.0
    assert model_B(np.zeros(G.size), 5).norm2() == 0.0


def test_linearity_and_batch():
    V = trig_ensemble(3, seed=4)
    batch = model_A(V, 30)
    a, b = 0.7, -1.3
    comb = model_A(a * V[0] + b * V[1], 30)
    np.testing.assert_allclose(comb.seq1, a * batch[0].seq1 + b * batch[1].seq1, atol=1e-14)
    np.testing.assert_allclose(comb.seq0, a * batch[0].seq0 + b * batch[1].seq0, atol=1e-14)


def test_shape_error():
    with pytest.raises(ValueError):
        model_A(np.ones(7), 4)


def test_model_seq_finite():
    with pytest.raises(ValueError):
        ModelSeq(np.array([np.nan]), np.array([0.0]))


def test_left_inverse_of_constant():
    # int_0^x (1 - 2t) dt = x (1 - x), so L[1] = 0
    assert np.max(np.abs(left_inverse_L(np.ones(G.size)))) <= 1e-12


def test_left_inverse_quadratic_closed_form():
    # g = (x - 1/2)^2: int_0^x (1 - 2t) g = x (1 - x) (1/4 + g) / 2, so L g = -x (1 - x) / 2
    g = (X - 0.5) ** 2
    exact = -0.5 * X * G.mirror(X)
    np.testing.assert_allclose(left_inverse_L(g), exact, atol=1e-12)


def test_left_inverse_parity_error():
    with pytest.raises(ParityError):
        left_inverse_L(X)


def test_left_inverse_report():
    r = left_inverse_report(20, 42)
    assert r["max_inverse_gap"] <= 1e-10
    assert r["max_norm_ratio"] <= 5.0 and r["bound_holds"]


def test_trig_ensemble_moment_and_parity():
    for parity in (None, "even", "odd"):
        V = trig_ensemble(4, seed=3, parity=parity)
        assert np.max(np.abs([G.integrate(v / X) for v in V])) <= 1e-12
        if parity == "even":
            np.testing.assert_allclose(V, G.mirror(V), atol=1e-14)
        if parity == "odd":
            np.testing.assert_allclose(V, -G.mirror(V), atol=1e-14)


def test_parseval_and_coercivity():
    r = coercivity_report(trig_ensemble(10, seed=11))
    assert r["max_parseval_rel_gap"] <= 1e-8
    assert r["min_coercivity_ratio"] > 0
    assert np.isfinite(r["augmented_constant"])


def test_missing_mode_is_finite_and_nonzero():
    w = missing_mode()
    assert np.all(np.isfinite(w)) and G.norm(w) > 0


def test_compactness_probe():
    r = compactness_probe(modes=12, N=200)
    s = np.asarray(r["singular_values"])
    assert np.all(np.diff(s) <= 0)
    assert r["decay"] > 10


def test_default_grid_cached():
    assert default_grid() is G and isinstance(G, QuadGrid)
