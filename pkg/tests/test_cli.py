import json

import numpy as np
import pytest

from monoball.cli import (EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_VERIFY_FAIL,
                          main, parse_quadrature, parse_r_grid)
from monoball.bounds import random_coefficients
from monoball.fourier import boundary_samples, project, synthesize
from monoball.integrate import QuadratureRule


def run_cli(*args):
    return main(list(args))


def test_parse_r_grid():
    assert parse_r_grid("0:0:1") == [0.0]
    assert parse_r_grid("0.05:0.45:0.05") == pytest.approx(
        [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45])
    with pytest.raises(Exception):
        parse_r_grid("a:b:c")
    with pytest.raises(Exception):
        parse_r_grid("0.1:0.4:0")


def test_parse_quadrature():
    assert parse_quadrature("8,16") == (8, 16)
    with pytest.raises(Exception):
        parse_quadrature("8")


def test_basis_degree_zero(tmp_path, capsys):
    out = tmp_path / "basis.json"
    assert run_cli("basis", "--max-degree", "0", "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["count"] == 3  # 2*0 + 3
    kinds = sorted((e["kind"], e["m"]) for e in doc["elements"])
    assert kinds == [("X", 1), ("X0", 0), ("Y", 1)]


def test_basis_csv(tmp_path):
    out = tmp_path / "basis.csv"
    assert run_cli("basis", "--max-degree", "1", "--format", "csv",
                   "--out", str(out)) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,m,kind,norm_sq_num")
    assert len(lines) > 5


def test_basis_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run_cli("basis", "--max-degree", "2", "--out", str(a))
    run_cli("basis", "--max-degree", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_norms_all_match(tmp_path):
    out = tmp_path / "norms.json"
    assert run_cli("norms", "--max-degree", "3", "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["all_match"]
    # the n=0 twist rows carry the degeneracy note
    notes = [r["note"] for r in doc["rows"] if r["n"] == 0 and r["quantity"] == "re_e1_norm_sq"]
    assert any("degenerate" in n for n in notes)


def test_verify_exit_zero(capsys):
    assert run_cli("verify", "--max-degree", "2", "--trials", "10") == EXIT_OK
    text = capsys.readouterr().out
    assert "all checks passed" in text


def test_config_errors():
    assert run_cli("bound", "--r-grid", "bad:grid") == EXIT_CONFIG
    assert run_cli("bound", "--r-grid", "0.1:0.9:0.1") == EXIT_CONFIG  # r >= 1/2
    assert run_cli("basis", "--max-degree", "-3") == EXIT_CONFIG
    assert run_cli("nonsense") == EXIT_CONFIG


def test_io_error_on_missing_input():
    assert run_cli("decompose", "--input", "/nonexistent/samples.json") == EXIT_IO


def test_decompose_round_trip(tmp_path, basis6, rule6):
    rng = np.random.default_rng(51)
    coeffs = random_coefficients(4, rng, basis6)
    f = synthesize(coeffs, basis6)
    re_f, re_fe1 = boundary_samples(f, rule6)
    samples = {"rule": {"n_theta": rule6.n_theta, "n_phi": rule6.n_phi},
               "re_f": re_f.tolist(), "re_fe1": re_fe1.tolist(),
               "f0_e2": float(coeffs.f0.x2)}
    inp = tmp_path / "samples.json"
    inp.write_text(json.dumps(samples))
    out = tmp_path / "coeffs.json"
    assert run_cli("decompose", "--input", str(inp), "--max-degree", "6",
                   "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    oracle = project(f, basis6)
    got = {(c["n"], c["m"], c["kind"]): c["value"] for c in doc["coeffs"]}
    for key, val in got.items():
        assert val == pytest.approx(oracle.alpha(*key), abs=1e-9)
    assert doc["f0"][0] == pytest.approx(float(oracle.f0.x0), abs=1e-12)
    assert doc["f0"][2] == pytest.approx(float(coeffs.f0.x2))


def test_decompose_bad_sample_count(tmp_path):
    samples = {"rule": {"n_theta": 4, "n_phi": 8}, "re_f": [0.0] * 5, "re_fe1": [0.0] * 5}
    inp = tmp_path / "bad.json"
    inp.write_text(json.dumps(samples))
    assert run_cli("decompose", "--input", str(inp), "--max-degree", "1") == EXIT_CONFIG


def test_bound_r_zero(tmp_path):
    out = tmp_path / "bound.json"
    assert run_cli("bound", "--max-degree", "2", "--trials", "2", "--seed", "5",
                   "--r-grid", "0:0:1", "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    for rep in doc["reports"]:
        assert rep["r"] == 0.0
        assert rep["rhs_series"] == pytest.approx(rep["f0_abs"], rel=1e-12)
        assert rep["pass_series"]


def test_bound_deterministic_and_csv(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["bound", "--max-degree", "2", "--trials", "2", "--seed", "11",
            "--r-grid", "0.1:0.3:0.1"]
    assert run_cli(*args, "--out", str(a)) == EXIT_OK
    assert run_cli(*args, "--out", str(b)) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["meta"]["seed"] == 11
    assert "version" in doc
    csv_out = tmp_path / "r.csv"
    assert run_cli(*args, "--format", "csv", "--out", str(csv_out)) == EXIT_OK
    lines = csv_out.read_text().splitlines()
    assert lines[0].startswith("trial,r,max_f")
    assert len(lines) == 1 + 2 * 3  # header + trials * radii


def test_bound_custom_quadrature(tmp_path):
    out = tmp_path / "q.json"
    assert run_cli("bound", "--max-degree", "2", "--trials", "1", "--r-grid",
                   "0.1:0.1:0.1", "--quadrature", "6,12", "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["meta"]["quadrature"] == [6, 12]


def test_verify_json_report(tmp_path):
    out = tmp_path / "verify.json"
    assert run_cli("verify", "--max-degree", "2", "--trials", "5",
                   "--out", str(out)) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["ok"] and len(doc["checks"]) >= 10
