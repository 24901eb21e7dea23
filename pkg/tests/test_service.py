import pytest
from fastapi.testclient import TestClient

from shiftlap.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


CONST_ONE = {"kind": "constant", "value": "1"}
CHI_12 = {
    "kind": "cylinder",
    "N": 2,
    "level": 1,
    "values": {"11": "0", "12": "1", "21": "0", "22": "0"},
}
NEG_GREEN_ONE = {"kind": "solution", "f": CONST_ONE, "zeta": {"1": "0", "2": "0"}}


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_green_kernel(client):
    resp = client.post("/green/kernel", json={"N": 2, "x": "12", "y": "121"})
    assert resp.status_code == 200
    assert resp.json()["value"] == "1"
    assert resp.json()["config"] == {"N": 2, "mode": "rational", "seed": None}


def test_green_kernel_same_point_is_a_domain_error(client):
    resp = client.post("/green/kernel", json={"N": 2, "x": "12", "y": "122"})
    assert resp.status_code == 400
    assert resp.json()["error"] == "same-point"


def test_green_apply(client):
    resp = client.post(
        "/green/apply",
        json={"N": 2, "f": CONST_ONE, "points": ["1", "12", "2"]},
    )
    assert resp.status_code == 200
    values = {r["point"]: r["value"] for r in resp.json()["records"]}
    assert values == {"1": "0", "12": "1/4", "2": "0"}


def test_evaluate_solution_spec(client):
    resp = client.post(
        "/functions/evaluate",
        json={"N": 2, "u": NEG_GREEN_ONE, "points": ["12"]},
    )
    assert resp.json()["records"] == [{"point": "12", "value": "-1/4"}]


def test_dirichlet_form_both_algorithms(client):
    resp = client.post(
        "/forms/dirichlet",
        json={"N": 2, "m": 1, "u": CHI_12, "v": CHI_12, "algorithm": "both"},
    )
    records = resp.json()["records"]
    assert {r["algorithm"] for r in records} == {"operator-form", "difference-form"}
    assert all(r["value"] == "1" for r in records)


def test_energy_sequence(client):
    resp = client.post(
        "/forms/energy",
        json={"N": 2, "f": {"kind": "coordinate-series", "a": "1/2", "symbol": 1}, "mmax": 3},
    )
    body = resp.json()
    assert [r["value"] for r in body["records"]] == ["1", "3/2", "7/4", "15/8"]
    assert body["monotone"] is True


def test_laplacian_residuals(client):
    resp = client.post(
        "/boundary/laplacian",
        json={"N": 2, "u": NEG_GREEN_ONE, "f": CONST_ONE, "M": 0, "mmax": 4},
    )
    body = resp.json()
    assert body["all_zero"] is True
    assert [r["residual"] for r in body["records"]] == ["0"] * 4


def test_weak_residual(client):
    resp = client.post(
        "/boundary/weak-residual",
        json={"N": 2, "u": NEG_GREEN_ONE, "f": CONST_ONE, "M": 0, "m": 3},
    )
    assert resp.json()["value"] == "0"


def test_neumann_derivative(client):
    resp = client.post(
        "/boundary/neumann-derivative",
        json={"N": 2, "u": NEG_GREEN_ONE, "p": "1", "M": 0},
    )
    body = resp.json()
    assert body["value"] == "1/2" and body["exact"] is True


def test_solve_dirichlet(client):
    resp = client.post(
        "/boundary/solve-dirichlet",
        json={"N": 2, "f": CONST_ONE, "zeta": "2,2", "points": ["12"]},
    )
    body = resp.json()
    assert body["boundary_values"] == {"1": "2", "2": "2"}
    assert body["evaluations"] == [{"point": "12", "value": "7/4"}]

    # the returned solution spec can be fed straight back in
    resp2 = client.post(
        "/functions/evaluate",
        json={"N": 2, "u": body["solution"], "points": ["12"]},
    )
    assert resp2.json()["records"][0]["value"] == "7/4"


def test_solve_neumann_compatible(client):
    resp = client.post(
        "/boundary/solve-neumann",
        json={"N": 2, "f": CONST_ONE, "xi": "1/2,1/2"},
    )
    assert resp.status_code == 200
    assert resp.json()["boundary_values"] == {"1": "0", "2": "0"}


def test_solve_neumann_incompatible_carries_defect(client):
    resp = client.post(
        "/boundary/solve-neumann",
        json={"N": 2, "f": CONST_ONE, "xi": "1/2,1/3"},
    )
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"] == "incompatible-boundary-data"
    assert body["defect"] == {"1": "0", "2": "-1/6"}


def test_gauss_green(client):
    chi_21 = {
        "kind": "cylinder",
        "N": 2,
        "level": 1,
        "values": {"11": "0", "12": "0", "21": "1", "22": "0"},
    }
    resp = client.post(
        "/boundary/gauss-green",
        json={"N": 2, "u": CHI_12, "v": chi_21, "M": 1},
    )
    body = resp.json()
    assert body["residual"] == "0"
    assert body["conservation_residuals"] == ["0", "0"]


def test_verify_endpoint(client):
    resp = client.post("/verify", json={"N": 2, "mmax": 4, "seed": 11})
    body = resp.json()
    assert body["passed"] is True
    assert body["config"]["seed"] == 11
    assert len(body["records"]) >= 10


def test_verify_unknown_check_rejected(client):
    resp = client.post("/verify", json={"N": 2, "checks": ["no-such-check"]})
    assert resp.status_code == 422


def test_malformed_spec_maps_to_422(client):
    resp = client.post(
        "/green/apply",
        json={"N": 2, "f": {"kind": "cylinder", "N": 2, "level": 0, "values": {}}, "points": []},
    )
    assert resp.status_code == 422
    assert resp.json()["error"] == "function-spec"


def test_resource_limit_maps_to_400(client):
    resp = client.post(
        "/forms/energy",
        json={"N": 2, "f": CONST_ONE, "mmax": 40},
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "resource-limit"


def test_identical_requests_give_identical_bytes(client):
    payload = {"N": 2, "f": CHI_12, "mmax": 4}
    first = client.post("/forms/energy", json=payload)
    second = client.post("/forms/energy", json=payload)
    assert first.content == second.content
