import numpy as np
import pytest
from fastapi.testclient import TestClient

from monoball import __version__
from monoball.bounds import random_coefficients
from monoball.fourier import boundary_samples, project, synthesize
from monoball.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "version": __version__}


def test_basis_endpoint(client):
    resp = client.post("/basis", json={"max_degree": 1})
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["count"] == 3 + 5
    first = doc["elements"][0]
    assert first["norm_sq"]["pi_power"] == 1


def test_basis_validation(client):
    assert client.post("/basis", json={"max_degree": -1}).status_code == 422
    assert client.post("/basis", json={"max_degree": 99}).status_code == 422


def test_norms_endpoint(client):
    doc = client.post("/norms", json={"max_degree": 2}).json()
    assert doc["all_match"]
    quantities = {r["quantity"] for r in doc["rows"]}
    assert quantities == {"norm_sq", "re_norm_sq", "re_e1_norm_sq"}


def test_verify_endpoint(client):
    doc = client.post("/verify", json={"max_degree": 2, "trials": 5}).json()
    assert doc["ok"]
    assert any(c["name"] == "gram-identity" for c in doc["checks"])


def test_decompose_endpoint_matches_library(client, basis6, rule6):
    rng = np.random.default_rng(61)
    coeffs = random_coefficients(3, rng, basis6)
    f = synthesize(coeffs, basis6)
    re_f, re_fe1 = boundary_samples(f, rule6)
    payload = {"max_degree": 6,
               "rule": {"n_theta": rule6.n_theta, "n_phi": rule6.n_phi},
               "re_f": re_f.tolist(), "re_fe1": re_fe1.tolist()}
    doc = client.post("/decompose", json=payload).json()
    oracle = project(f, basis6)
    for c in doc["coeffs"]:
        assert c["value"] == pytest.approx(oracle.alpha(c["n"], c["m"], c["kind"]),
                                           abs=1e-9)


def test_decompose_wrong_length(client):
    payload = {"max_degree": 1, "rule": {"n_theta": 4, "n_phi": 8},
               "re_f": [0.0] * 3, "re_fe1": [0.0] * 3}
    assert client.post("/decompose", json=payload).status_code == 400


def test_decompose_resolution_too_low(client):
    payload = {"max_degree": 6, "rule": {"n_theta": 2, "n_phi": 4},
               "re_f": [0.0] * 8, "re_fe1": [0.0] * 8}
    assert client.post("/decompose", json=payload).status_code == 400


def test_bound_endpoint(client):
    payload = {"max_degree": 2, "trials": 2, "seed": 3, "r_grid": [0.1, 0.2],
               "sphere_grid": [41, 80]}
    doc = client.post("/bound", json=payload).json()
    assert doc["all_pass_series"]
    assert doc["schwarz_counterexamples"] == 0
    assert len(doc["reports"]) == 4


def test_bound_radius_validation(client):
    payload = {"max_degree": 2, "trials": 1, "r_grid": [0.6]}
    assert client.post("/bound", json=payload).status_code == 422
