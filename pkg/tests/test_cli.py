import csv
import math

import numpy as np
import pytest

from asemi import matfile
from asemi.cli import alpha_grid, main


@pytest.fixture
def files(tmp_path):
    paths = {}
    mats = {
        "A": np.diag([1.0, 1.0, 2.0]),
        "T": np.array([[0, 0, 0], [2, 0, 0], [0, 1, 0]]),
        "I": np.eye(3),
        "I2": np.eye(2),
        "neg": np.diag([1.0, -1.0]),
        "null": np.diag([1.0, 0.0]),
        "up": np.array([[0, 1], [0, 0]]),
    }
    for name, M in mats.items():
        paths[name] = str(tmp_path / f"{name}.json")
        matfile.write(paths[name], M)
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "data": [[1, 0]]}')
    paths["bad"] = str(bad)
    paths["dir"] = str(tmp_path)
    return paths


def _value(out, key):
    for line in out.splitlines():
        if line.startswith(key + " "):
            return float(line.split()[1])
    raise KeyError(key)


def test_compute_example(files, capsys):
    assert main(["compute", "--A", files["A"], "--T", files["T"], "--alpha", "1"]) == 0
    out = capsys.readouterr().out
    assert "w_A                1.224744871392" in out
    assert abs(_value(out, "w_A") - math.sqrt(6) / 2) <= 1e-9
    assert _value(out, "alpha_seminorm") == pytest.approx(math.sqrt(6) / 2, abs=1e-9)
    assert "[0.000000000000, 2.000000000000, 0.000000000000]" in out


def test_compute_operator_norm_at_zero(files, capsys):
    assert main(["compute", "--A", files["A"], "--T", files["T"], "--alpha", "0"]) == 0
    out = capsys.readouterr().out
    assert "norm_A             2.000000000000" in out
    assert "alpha_seminorm     2.000000000000" in out


def test_compute_identity(files, capsys):
    assert main(["compute", "--A", files["I"], "--T", files["I"], "--alpha", "0.4"]) == 0
    out = capsys.readouterr().out
    for key in ("norm_A", "w_A", "alpha_seminorm"):
        assert _value(out, key) == pytest.approx(1.0, abs=1e-12)


def test_compute_exit_codes(files, capsys):
    assert main(["compute", "--A", files["bad"], "--T", files["T"]]) == 2
    assert main(["compute", "--A", files["neg"], "--T", files["I2"]]) == 3
    assert "NotPSD" in capsys.readouterr().err
    assert main(["compute", "--A", files["A"], "--T", files["I2"]]) == 3
    assert "DimensionMismatch" in capsys.readouterr().err
    assert main(["compute", "--A", files["null"], "--T", files["up"]]) == 3
    assert "NotInBA" in capsys.readouterr().err
    assert main(["compute", "--A", files["dir"] + "/missing.json", "--T", files["T"]]) == 4
    assert main(["compute", "--A", files["A"], "--T", files["T"], "--alpha", "1.2"]) == 3


def test_sweep_example(files, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    args = ["sweep", "--A", files["A"], "--T", files["T"], "--from", "0", "--to", "1", "--step", "0.125",
            "--out", str(out)]
    assert main(args) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 9
    alphas = [float(r["alpha"]) for r in rows]
    assert all(b > a for a, b in zip(alphas, alphas[1:])) and alphas[-1] <= 1
    row = next(r for r in rows if r["alpha"] == "0.875000000000")
    assert row["CARTESIAN_UPPER"] == "2.875000000000"
    assert rows[0]["alpha_seminorm"] == rows[0]["norm_A"]
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first


def test_sweep_theorem_columns(files, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--A", files["A"], "--T", files["T"], "--step", "0.5", "--out", str(out),
                 "--theorems", "EQUIV_W,lower_max4,ATTAINMENT_GAP"]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["alpha", "alpha_seminorm", "envelope", "norm_A", "w_A",
                             "EQUIV_W", "LOWER_MAX4", "ATTAINMENT_GAP"]
    for r in rows:
        assert float(r["alpha_seminorm"]) <= float(r["EQUIV_W"]) + 1e-9
        assert float(r["LOWER_MAX4"]) <= float(r["alpha_seminorm"]) ** 2 + 1e-9
        assert float(r["ATTAINMENT_GAP"]) >= -1e-9


def test_sweep_errors(files, tmp_path):
    base = ["sweep", "--A", files["A"], "--T", files["T"]]
    assert main(base + ["--out", str(tmp_path / "x.csv"), "--theorems", "PROD_MIN3"]) == 2
    assert main(base + ["--out", str(tmp_path / "x.csv"), "--from", "0.5", "--to", "0.2"]) == 3
    assert main(base + ["--out", str(tmp_path / "nodir" / "x.csv")]) == 4


def test_alpha_grid():
    assert alpha_grid(0, 1, 0.25) == [0, 0.25, 0.5, 0.75, 1.0]
    g = alpha_grid(0.1, 0.95, 0.2)
    assert g[-1] <= 0.95 and len(g) == 5
    with pytest.raises(ValueError):
        alpha_grid(0, 1, 0)


def test_check_exit_and_determinism(capsys):
    args = ["check", "--trials", "3", "--dim", "3", "--rank-deficit", "1", "--seed", "7"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert "total violations: 0" in first
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_check_zero_trials(capsys):
    assert main(["check", "--trials", "0", "--dim", "2"]) == 0
    assert "overall violations: 0" in capsys.readouterr().out


def test_check_theorem_subset_and_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["check", "--trials", "2", "--dim", "2", "3", "--theorems", "EQUIV_W,BUZANO",
                 "--alphas", "0,1/2,1", "--json", str(out)]) == 0
    import json
    doc = json.loads(out.read_text())
    assert len(doc) == 2 and set(doc[0]["counts"]) == {"EQUIV_W", "BUZANO"}
    assert main(["check", "--trials", "1", "--theorems", "NOPE"]) == 2


def test_check_reports_violation(monkeypatch, capsys):
    from asemi import inequalities
    from asemi.inequalities import Evaluator, Part

    original = Evaluator.parts

    def broken(self, theorem, alpha, S=None):
        parts, extras = original(self, theorem, alpha, S)
        if theorem is inequalities.TheoremId.EQUIV_W:
            parts = [Part("broken", p.rhs + 1.0, p.rhs) for p in parts]
        return parts, extras

    monkeypatch.setattr(Evaluator, "parts", broken)
    assert main(["check", "--trials", "1", "--dim", "2", "--theorems", "EQUIV_W", "--alphas", "0.5"]) == 1
    out = capsys.readouterr().out
    assert "VIOLATION EQUIV_W" in out and "seed=[0, 0]" in out
    # the dumped matrices re-parse exactly
    line = next(l for l in out.splitlines() if l.strip().startswith("T:"))
    T = matfile.loads(line.split(":", 1)[1])
    assert T.shape == (2, 2)


def test_repro(capsys):
    assert main(["repro"]) == 0
    out = capsys.readouterr().out
    assert "CARTESIAN alpha=7/8" in out and "2.875000000" in out
    assert "SQUARE alpha=12/13" in out and "2.191175490" in out
    assert "3.000000000" in out and "2.207106781" in out
    assert out.count("  matched") == 4 and out.count("  strict") == 2
    assert "MISMATCH" not in out


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "asemi", "repro"], capture_output=True, text=True)
    assert res.returncode == 0 and "all values matched" in res.stdout
