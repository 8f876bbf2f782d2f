from fastapi.testclient import TestClient

from api import app

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_stats():
    response = client.post("/stats", json={"dictionary": "ab{1,3}cd\nab{1,3}ef\n"})
    assert response.status_code == 200
    body = response.json()
    assert body["d"] == 2
    assert body["left_vertices"] == 1
    assert body["right_vertices"] == 2
    assert body["regime"] == "uniform"
    assert body["suggested_engine"] in ("orientation", "threshold")


def test_stats_parse_error():
    response = client.post("/stats", json={"dictionary": "ab{3,1}cd"})
    assert response.status_code == 422
    assert "line 1" in response.json()["detail"]


def test_match_with_witnesses():
    response = client.post(
        "/match",
        json={"dictionary": "a{*}a", "text": "aaa", "engine": "threshold", "witnesses": True},
    )
    assert response.status_code == 200
    body = response.json()
    assert [(o["end_pos"], o["witness_j"]) for o in body["occurrences"]] == [(2, 1), (3, 1), (3, 2)]
    assert body["summary"]["engine"] == "threshold"
    assert body["counters"]["characters"] == 3


def test_match_dedup():
    response = client.post("/match", json={"dictionary": "ab{0,2}cd", "text": "abcd"})
    assert response.json()["occurrences"] == [{"pattern_id": 0, "end_pos": 4, "witness_j": None}]


def test_triangles():
    edges = [[0, 1], [1, 2], [0, 2], [2, 3]]
    response = client.post("/triangles", json={"edges": edges, "vertex": 2})
    assert response.status_code == 200
    assert response.json() == {"triangles": [[0, 1, 2]]}
    response = client.post("/triangles", json={"edges": edges, "all": True, "bounded": True, "alpha": 1})
    assert response.json() == {"triangles": [[0, 1, 2]]}


def test_triangles_errors():
    assert client.post("/triangles", json={"edges": [[0, 1]]}).status_code == 400
    assert client.post("/triangles", json={"edges": [[0, 1]], "vertex": 5}).status_code == 404
    assert client.post("/triangles", json={"edges": [[1, 1]], "all": True}).status_code == 400
