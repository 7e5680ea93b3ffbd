import pytest

from run import app


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client


def test_home_lists_operations(client):
    response = client.get("/")
    assert response.status_code == 200
    data = response.get_json()
    assert data["name"] == "Layout Algebra"
    assert "compose" in data["operations"]
    assert "compose" in data["checks"]


def test_status(client):
    data = client.get("/api/status").get_json()
    assert data["status"] == "online"
    assert data["configuration"]["valid"]
    assert "operations" in data["oracle"]


def test_compose(client):
    response = client.post("/api/compose", json={"a": "(4,6,8,10):(2,3,5,7)", "b": "6:12"})
    assert response.status_code == 200
    assert response.get_json() == {"operation": "compose", "result": "(2,3):(9,5)"}


def test_optional_inputs_and_grids(client):
    data = client.post("/api/complement", json={"layout": "(3,4):(4,1)", "size": "24"}).get_json()
    assert data["result"] == "2:12"
    data = client.post("/api/print", json={"layout": "(2,3):(1,9)", "render": True}).get_json()
    assert data["grid"] == "0  9 18\n1 10 19"
    data = client.post("/api/chain", json={"values": [0, 7, 3, 5]}).get_json()
    assert data["result"] == "(2,2,2):(7,3,5)\n(3,1):(1,4)"


def test_relaxed_complement_per_request(client):
    strict = client.post("/api/complement", json={"layout": "(2,2):(1,5)"})
    assert strict.status_code == 422
    relaxed = client.post("/api/complement",
                          json={"layout": "(2,2):(1,5)", "relaxed_complement": True})
    assert relaxed.get_json()["result"] == "(2,1):(2,10)"


def test_request_errors(client):
    assert client.post("/api/transpose", json={}).status_code == 404
    missing = client.post("/api/compose", json={"a": "8:1"})
    assert missing.status_code == 400
    assert missing.get_json()["required"] == ["a", "b"]
    unreadable = client.post("/api/print", json={"layout": "(4,8"})
    assert unreadable.status_code == 400
    assert unreadable.get_json()["type"] == "ParseError"


def test_domain_errors_are_unprocessable(client):
    response = client.post("/api/compose", json={"a": "(3,4):(1,10)", "b": "(2,2):(1,2)"})
    assert response.status_code == 422
    data = response.get_json()
    assert "stride divisibility condition" in data["error"]


def test_oracle_check(client):
    response = client.post("/api/check/compose", json={"a": "24:3", "b": "8:3"})
    assert response.status_code == 200
    data = response.get_json()
    assert (data["result"], data["agreed"]) == ("8:9", True)
    assert data["tally"]["compose"]["agreed"] >= 1

    data = client.post("/api/check/rinv", json={"a": "(4,8):(1,5)"}).get_json()
    assert (data["result"], data["agreed"]) == ("4:1", True)


def test_oracle_check_errors(client):
    assert client.post("/api/check/complement", json={"a": "4:1"}).status_code == 404
    assert client.post("/api/check/divide", json={"a": "24:3"}).status_code == 400
    assert client.post("/api/check/compose", json={"a": "(4,8", "b": "2:1"}).status_code == 400
