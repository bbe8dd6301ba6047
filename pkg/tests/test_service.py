import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import FORCED_TAU_C
from frpkit import __version__
from frpkit.cli import data_path
from frpkit.fuzzysim import rank_by_similarity, requirement_from_dict
from frpkit.laminate import (
    analyze,
    laminate_spec_from_dict,
    report_to_dict,
    sweep_orientations,
)
from frpkit.matdb import MaterialDb
from frpkit.service import create_app


@pytest.fixture(scope="module")
def client(seed_db):
    # module scope: the app holds an immutable snapshot, so sharing is safe
    return TestClient(create_app(seed_db))


@pytest.fixture(scope="module")
def polymer_req_payload():
    return json.loads(data_path("requirements_polymer.json").read_text())


@pytest.fixture(scope="module")
def fiber_req_payload():
    return json.loads(data_path("requirements_fiber.json").read_text())


@pytest.fixture(scope="module")
def table7_payload():
    return json.loads(data_path("table7.json").read_text())


def test_healthz(client, seed_db):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["db_counts"] == {"polymers": len(seed_db.polymers),
                                 "fibers": len(seed_db.fibers)}
    assert body["version"] == __version__


def test_healthz_with_empty_db():
    client = TestClient(create_app(MaterialDb()))
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json()["db_counts"] == {"polymers": 0, "fibers": 0}
    assert client.get("/api/polymers").json() == []


def test_list_polymers_schema_ordered(client):
    resp = client.get("/api/polymers")
    assert resp.status_code == 200
    records = resp.json()
    names = [r["name"] for r in records]
    assert "Polyetherimide" in names
    pei = records[names.index("Polyetherimide")]
    assert list(pei)[:5] == ["name", "tensile_strength_mpa",
                             "yield_strength_mpa", "elongation_pct",
                             "shear_strength_mpa"]
    assert pei["modulus_gpa"] == 98.99


def test_list_fibers(client):
    records = client.get("/api/fibers").json()
    assert any(r["name"] == "S-Glass" for r in records)


def test_select_matrix_matches_library(client, seed_db, polymer_req_payload):
    resp = client.post("/api/select/matrix",
                       json={"requirements": polymer_req_payload, "top": 3})
    assert resp.status_code == 200
    got = resp.json()["results"]
    req = requirement_from_dict(polymer_req_payload)
    expected = rank_by_similarity(req, seed_db.polymers)[:3]
    assert got[0]["name"] == "Polyetherimide"
    for g, e in zip(got, expected):
        assert g["name"] == e.record_name
        assert g["strength"] == e.strength  # bit-identical
        assert g["rank"] == e.rank


def test_select_matrix_missing_slot_is_422(client, polymer_req_payload):
    broken = {"schema": "polymer",
              "values": dict(polymer_req_payload["values"])}
    del broken["values"]["density_g_cm3"]
    resp = client.post("/api/select/matrix", json={"requirements": broken})
    assert resp.status_code == 422
    body = resp.json()
    assert body["code"] == "invalid_requirement"
    assert body["detail"] == "density_g_cm3"


def test_select_matrix_top1(client, polymer_req_payload):
    resp = client.post("/api/select/matrix",
                       json={"requirements": polymer_req_payload, "top": 1})
    assert len(resp.json()["results"]) == 1


def test_classify_endpoint(client):
    resp = client.post("/api/fibers/classify",
                       json={"sigma_f": 3450, "d": 0.635, "l": 25, "tau_c": 42})
    assert resp.status_code == 200
    body = resp.json()
    assert body["l_c"] == pytest.approx(26.0804, abs=1e-4)
    assert body["class"] == "Short"


def test_classify_endpoint_boundary(client):
    resp = client.post("/api/fibers/classify",
                       json={"sigma_f": 2, "d": 1, "l": 1, "tau_c": 1})
    assert resp.json() == {"l_c": 1.0, "class": "Short"}


def test_classify_endpoint_zero_tau_is_422(client):
    resp = client.post("/api/fibers/classify",
                       json={"sigma_f": 2, "d": 1, "l": 1, "tau_c": 0})
    assert resp.status_code == 422
    assert resp.json()["code"] == "invalid_input"


def test_select_fiber_forced_long(client, fiber_req_payload):
    resp = client.post("/api/select/fiber",
                       json={"requirements": fiber_req_payload,
                             "tau_c_override": FORCED_TAU_C})
    assert resp.status_code == 200
    body = resp.json()
    assert body["class"] == "Long"
    assert body["results"][0]["name"] == "S-Glass"


def test_select_fiber_with_matrix_name(client, fiber_req_payload):
    resp = client.post("/api/select/fiber",
                       json={"requirements": fiber_req_payload,
                             "matrix": "Polyetherimide"})
    assert resp.status_code == 200
    assert resp.json()["class"] == "Short"


def test_select_fiber_empty_class_is_404(seed_db, fiber_req_payload):
    # a DB whose single fiber stays Medium under the forced tau_c
    from frpkit.matdb import FiberRecord

    db = MaterialDb(fibers=(FiberRecord("Shorty", 0.5, 0.3, 0.5, 1000, 70),))
    client = TestClient(create_app(db))
    resp = client.post("/api/select/fiber",
                       json={"requirements": fiber_req_payload,
                             "tau_c_override": FORCED_TAU_C})
    assert resp.status_code == 404
    body = resp.json()
    assert body["code"] == "empty_class"
    assert body["detail"] == "Long"


def test_select_fiber_needs_bond_strength_source(client, fiber_req_payload):
    resp = client.post("/api/select/fiber",
                       json={"requirements": fiber_req_payload})
    assert resp.status_code == 422
    assert resp.json()["code"] == "invalid_requirement"


def test_analyze_parity_with_library(client, table7_payload):
    resp = client.post("/api/laminate/analyze", json=table7_payload)
    assert resp.status_code == 200
    expected = report_to_dict(analyze(laminate_spec_from_dict(table7_payload)))
    assert resp.json() == expected  # numerically identical, field for field


def test_analyze_bad_plane_is_422(client, table7_payload):
    bad = json.loads(json.dumps(table7_payload))
    bad["planes"][0]["vf"] = 1.2
    resp = client.post("/api/laminate/analyze", json=bad)
    assert resp.status_code == 422
    assert resp.json()["code"] == "bad_spec"


def test_sweep_parity_with_library(client, table7_payload):
    thetas = [0, 15, 30, 45, 60, 75, 90]
    resp = client.post("/api/laminate/sweep",
                       json={**table7_payload, "thetas": thetas})
    assert resp.status_code == 200
    spec = laminate_spec_from_dict(table7_payload)
    expected = sweep_orientations(spec, thetas)
    for row, e in zip(resp.json()["rows"], expected):
        assert row["theta_deg"] == e.theta_deg
        assert row["mean_clme"] == e.mean_clme
        assert row["mean_ctme"] == e.mean_ctme
    assert resp.json()["rows"][0]["mean_clme"] == 28300.0


def test_sweep_rejects_out_of_range_theta(client, table7_payload):
    resp = client.post("/api/laminate/sweep",
                       json={**table7_payload, "thetas": [0, 95]})
    assert resp.status_code == 422
    assert resp.json()["code"] == "bad_spec"


def test_sweep_empty_theta_list(client, table7_payload):
    resp = client.post("/api/laminate/sweep",
                       json={**table7_payload, "thetas": []})
    assert resp.status_code == 200
    assert resp.json()["rows"] == []


def test_error_body_shape_is_single_object(client):
    for resp in (
        client.post("/api/select/matrix", json={"requirements": {}}),
        client.post("/api/fibers/classify", json={}),
        client.post("/api/laminate/analyze", json={}),
        client.get("/api/nothere"),
    ):
        assert resp.status_code >= 400
        body = resp.json()
        assert set(body) == {"code", "message", "detail"}


def test_statelessness_request_order_does_not_matter(client, table7_payload,
                                                     polymer_req_payload):
    def snapshot():
        return (
            client.post("/api/laminate/analyze", json=table7_payload).json(),
            client.post("/api/select/matrix",
                        json={"requirements": polymer_req_payload}).json(),
            client.get("/api/fibers").json(),
        )

    first = snapshot()
    # interleave other calls, then repeat
    client.get("/healthz")
    client.post("/api/fibers/classify",
                json={"sigma_f": 1, "d": 1, "l": 1, "tau_c": 1})
    assert snapshot() == first


def test_desk_scale_latency(client, table7_payload):
    import time

    big = dict(table7_payload)
    big["planes"] = [{"vf": 0.5, "theta_deg": 30.0}] * 100
    for path, body in (
        ("/api/laminate/analyze", big),
        ("/api/select/matrix",
         {"requirements": json.loads(
             data_path("requirements_polymer.json").read_text())}),
    ):
        start = time.perf_counter()
        assert client.post(path, json=body).status_code == 200
        assert time.perf_counter() - start < 0.1


def test_randomized_spec_parity(client):
    rng = np.random.default_rng(1234)
    for _ in range(10):
        payload = {
            "plane_volume_cm3": float(rng.uniform(10, 500)),
            "fiber": {"length": float(rng.uniform(1, 50)),
                      "diameter": float(rng.uniform(0.05, 1.0)),
                      "modulus_gpa": float(rng.uniform(1, 400))},
            "matrix": {"modulus_gpa": float(rng.uniform(1, 200))},
            "planes": [{"vf": float(rng.uniform(0, 1)),
                        "theta_deg": float(rng.uniform(0, 90))}
                       for _ in range(int(rng.integers(1, 9)))],
        }
        resp = client.post("/api/laminate/analyze", json=payload)
        assert resp.status_code == 200
        expected = report_to_dict(analyze(laminate_spec_from_dict(payload)))
        assert resp.json() == expected
