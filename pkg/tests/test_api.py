import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}
    assert client.get("/api").json()["status"] == "operational"


def test_mu_from_graph6(client):
    response = client.post("/api/spectra/mu", json={"graph6": "C~"})
    assert response.status_code == 200
    body = response.json()
    assert body["kind"] == "Adjacency"
    assert body["value"] == pytest.approx(3.0)


def test_q_from_edges(client):
    response = client.post("/api/spectra/q", json={"n": 3, "edges": [[0, 1], [1, 2]]})
    assert response.status_code == 200
    assert response.json()["value"] == pytest.approx(3.0)


def test_bounds(client):
    response = client.post("/api/spectra/bounds", json={"n": 4, "edges": [[0, 2], [0, 3], [1, 2], [1, 3]], "x_size": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["mu"] == pytest.approx(2.0)
    assert body["bounds"]["sqrt_edges_upper"] == pytest.approx(2.0)


def test_spectra_errors(client):
    assert client.post("/api/spectra/laplacian", json={"graph6": "Bw"}).status_code == 404
    assert client.post("/api/spectra/mu", json={"graph6": "Bx"}).status_code == 400
    assert client.post("/api/spectra/mu", json={"graph6": "Bw", "n": 3}).status_code == 422
    assert client.post("/api/spectra/mu", json={"n": 300, "edges": []}).status_code == 413


def test_family(client):
    response = client.get("/api/families/Cnk", params={"n": 4, "k": 1})
    assert response.status_code == 200
    body = response.json()
    assert body["family"] == "Cnk(4,1)"
    assert body["x_size"] == 3
    assert body["edge_count"] == 9
    assert client.get("/api/families/Cnk", params={"n": 4, "k": 3}).status_code == 400
    assert client.get("/api/families/Petersen").status_code == 422


def test_theorem_check(client):
    payload = {"graph": {"graph6": "H~~~~~~"}, "theorem": "T2_10", "k": 2, "validate_with_oracle": True}
    response = client.post("/api/theorems/check", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"]["conclusion"]["kind"] == "Certified"
    assert body["validation"]["status"] == "agree"


def test_theorem_check_bad_variant(client):
    payload = {"graph": {"graph6": "H~~~~~~"}, "theorem": "T2_11", "k": 1, "variant": "draft"}
    assert client.post("/api/theorems/check", json=payload).status_code == 400
