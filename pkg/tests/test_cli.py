import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from akns import config
from akns.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_USAGE, _jsonable, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def direction(tmp_path):
    x = np.linspace(0, 1, 201)
    path = tmp_path / "dir.csv"
    np.savetxt(path, np.c_[x, np.sin(2 * np.pi * x), 0.3 + x ** 2], delimiter=",",
               header="x,v1,v2", comments="")
    return str(path)


def test_spectrum(capsys):
    code, rep = run(capsys, "spectrum", "--kappa", "0", "--n", "3")
    assert code == EXIT_OK and rep["pass"]
    assert rep["schema"] == config.SCHEMA and rep["command"] == "spectrum"
    np.testing.assert_allclose(rep["result"]["eigenvalues"], np.pi * np.arange(-3, 4), atol=1e-13)
    assert set(rep) == {"schema", "command", "inputs", "pass", "checks", "result", "wall_time"}


def test_eig_constant_potential(capsys, tmp_path):
    x = np.linspace(0, 1, 11)
    path = tmp_path / "q.csv"
    np.savetxt(path, np.c_[x, 0 * x + 0.5], delimiter=",", header="x,q", comments="")
    code, rep = run(capsys, "eig", "--kappa", "0", "--n", "2", "--potential", str(path))
    assert code == EXIT_OK
    assert -0.5 in [pytest.approx(v, abs=1e-8) for v in rep["result"]["eigenvalues"]]


def test_frechet(capsys, direction):
    code, rep = run(capsys, "frechet", "--kappa", "1", "--n", "2", "--dir", direction)
    assert code == EXIT_OK and rep["checks"]["rel_gap"]["pass"]


def test_linmap(capsys, direction):
    code, rep = run(capsys, "linmap", "--pair", "0,2", "--dir", direction, "--N", "5")
    assert code == EXIT_OK
    assert set(rep["result"]) == {"kappa0", "kappa2"}


def test_ks(capsys):
    code, rep = run(capsys, "ks", "--id", "nu_one", "--kappa", "1", "--x", "0.3", "--X", "0.8",
                    "--z", "2.5", "--N", "10000", "--rate")
    assert code == EXIT_OK and "rate" in rep["result"]


def test_ks_failing_gap_exits_1(capsys):
    code, rep = run(capsys, "ks", "--id", "classic", "--kappa", "0", "--x", "0.5", "--z", "1.0",
                    "--N", "10", "--tol-gap", "1e-12")
    assert code == EXIT_FAIL and rep["pass"] is False


@pytest.mark.parametrize("check", ["inverse", "commute", "kernel-equiv", "odesl"])
def test_transform(capsys, check):
    code, rep = run(capsys, "transform", "--kappa", "1", "--check", check)
    assert code == EXIT_OK and rep["pass"]


def test_kernel_pair02(capsys):
    code, rep = run(capsys, "kernel", "--pair", "0,2")
    assert code == EXIT_OK and rep["checks"]["v1pp"]["pass"]


def test_kernel_plot_csv(capsys, tmp_path):
    path = tmp_path / "plot.csv"
    code, rep = run(capsys, "kernel", "--pair", "0,3", "--emit-plot", str(path))
    # the (0,3) report carries the integral and Frobenius-fit checks, which do not all hold
    assert code in (EXIT_OK, EXIT_FAIL)
    assert rep["result"]["plot_file"] == str(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "w", "v2"]
    assert len(rows) == 402
    assert float(rows[1][0]) == 1e-5


def test_trig_model(capsys):
    code, rep = run(capsys, "trig-model", "--ensemble", "5", "--modes", "400")
    assert code == EXIT_OK and rep["pass"]


def test_verify_no_timing_is_deterministic(capsys):
    a = run(capsys, "verify", "6", "10", "--no-timing")
    b = run(capsys, "verify", "6", "10", "--no-timing")
    assert a == b and a[0] == EXIT_OK
    assert "wall_time" not in a[1]
    assert [r["id"] for r in a[1]["result"]["criteria"]] == [6, 10]


def test_verify_tol_override(capsys):
    code, rep = run(capsys, "verify", "10", "--tol", "parity_detect=1e6")
    assert code == EXIT_FAIL
    assert rep["result"]["criteria"][0]["checks"]["odd_part_detected"]["tol"] == 1e6


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["spectrum"],
    ["kernel", "--pair", "1,3"],
    ["kernel", "--pair", "0,1", "--emit-plot", "x.csv"],
    ["linmap", "--pair", "0-2", "--dir", "x.csv"],
    ["verify", "11"],
    ["verify", "1", "--tol", "bogus=1"],
    ["verify", "1", "--tol", "lommel"],
])
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_missing_input_file(capsys, tmp_path):
    code = main(["eig", "--kappa", "0", "--potential", str(tmp_path / "none.csv")])
    assert code == EXIT_INPUT


def test_unwritable_output(capsys, tmp_path):
    code = main(["spectrum", "--kappa", "0", "--n", "2", "--out", str(tmp_path / "no" / "r.json")])
    assert code == EXIT_INPUT


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    assert main(["spectrum", "--kappa", "1", "--n", "2", "--out", str(path)]) == EXIT_OK
    assert json.loads(path.read_text())["result"]["kappa"] == 1


def test_numeric_failure_reports_error(capsys):
    code, rep = run(capsys, "ks", "--id", "classic", "--kappa", "0", "--x", "0.5",
                    "--z", str(math.pi + 1e-6), "--N", "10")
    assert code == EXIT_FAIL and "error" in rep and rep["pass"] is False


def test_jsonable():
    from fractions import Fraction

    out = _jsonable({"a": float("nan"), "b": [float("inf"), Fraction(1, 3)], "c": 1 + 2j,
                     "d": np.float64(2.0), "e": np.arange(2)})
    assert out == {"a": None, "b": [None, "1/3"], "c": {"re": 1.0, "im": 2.0}, "d": 2.0, "e": [0, 1]}


def test_threads_env(monkeypatch):
    monkeypatch.setenv("AKNS_THREADS", "3")
    assert config.threads() == 3
    monkeypatch.setenv("AKNS_THREADS", "0")
    with pytest.raises(ValueError):
        config.threads()
    monkeypatch.delenv("AKNS_THREADS")
    assert config.threads() >= 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "akns.cli", "spectrum", "--kappa", "0", "--n", "1",
                        "--no-timing"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["pass"] is True
