import pytest

from akns import config


def test_tolerance_overrides():
    t = config.tolerances({"lommel": 1e-6})
    assert t["lommel"] == 1e-6
    assert config.TOLERANCES["lommel"] == 1e-10


def test_unknown_tolerance():
    with pytest.raises(KeyError):
        config.tolerances({"nope": 1.0})


def test_runtime_limits():
    assert config.RUNTIME_LIMITS == {1: 1.0, 4: 60.0, 8: 120.0}


@pytest.mark.parametrize("key, value", [("ks_gap", 1e-3), ("operator_inverse", 1e-9),
                                        ("kernel_equivalence", 1e-8), ("parseval", 1e-8),
                                        ("left_inverse_bound", 5.0), ("null_sigma_min", 1e-4)])
def test_pinned_values(key, value):
    assert config.TOLERANCES[key] == value


def test_reference_triples_shape():
    assert set(config.REFERENCE_TRIPLES) == {"u", "v"}
    assert all(len(v) == 3 for v in config.REFERENCE_TRIPLES.values())
