from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from gwp.app import app

CHAIN2 = "name: chain2\nelements: a b\ncover: a < b\n"


@pytest.fixture
def client() -> TestClient:
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_checks_listing(client):
    names = [item["name"] for item in client.get("/checks").json()]
    assert "semidirect" in names
    assert names == sorted(names)


def test_inspect(client):
    response = client.post("/inspect", json={"spec": CHAIN2})
    assert response.status_code == 200
    body = response.json()
    assert body["shape"] == "chain"
    assert body["theoretical_order"] == 8


def test_decompose(client):
    body = client.post("/decompose", json={"spec": CHAIN2, "seed": 1}).json()
    assert body["tree"]["label"] == "S_2 ≀ (S_2)"
    assert all(check["status"] != "fail" for check in body["checks"])


def test_certify(client):
    body = client.post("/certify", json={"spec": CHAIN2}).json()
    assert body["verdict"] == "Certified"


def test_selftest_single_instance(client):
    response = client.post("/selftest", json={"spec": CHAIN2, "scope": ["laws"]})
    assert response.status_code == 200
    checks = response.json()["checks"]
    assert [c["name"] for c in checks] == ["identity", "group_axioms", "action_law", "faithfulness"]


@pytest.mark.parametrize(
    "payload, status",
    [
        ({"spec": "elements: a\nbogus\n"}, 400),
        ({"spec": "elements: a b\ncover: a < b\ncover: b < a\n"}, 400),
        ({"spec": "elements: a\ndomain: a 3\n"}, 422),
        ({"spec": CHAIN2, "budget": 0}, 422),
    ],
)
def test_certify_errors(client, payload, status):
    assert client.post("/certify", json=payload).status_code == status


def test_unknown_scope(client):
    response = client.post("/selftest", json={"spec": CHAIN2, "scope": ["bogus"]})
    assert response.status_code == 422


def test_desk_guard(client):
    response = client.post("/decompose", json={"spec": CHAIN2, "max_delta": 2})
    assert response.status_code == 503
