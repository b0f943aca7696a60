from app.domain import corpus

G2 = corpus.G2.to_document().model_dump()
G3 = corpus.G3.to_document().model_dump()


def test_root(client):
    resp = client.get("/")
    assert resp.status_code == 200
    assert resp.json() == {"service": "gauge-lattice", "status": "ok"}


def test_check(client):
    resp = client.post("/lattice/check", json=G2)
    assert resp.status_code == 200, resp.text
    assert resp.json()["regular"] == ["b"]


def test_check_dangling_edge_is_422(client):
    bad = {"vertices": ["a"], "edges": [{"id": "z", "src": "a", "rng": "c"}]}
    resp = client.post("/lattice/check", json=bad)
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "dangling_edge_endpoint"


def test_pairs_g2(client):
    resp = client.post("/lattice/pairs", json={"graph": G2})
    assert resp.status_code == 200, resp.text
    assert resp.json()["covers"] == [[0, 1], [0, 2], [1, 3], [2, 3]]


def test_join_and_meet(client):
    body = {
        "graph": G2,
        "pairs": [{"covariance": ["b"]}, {"kernel": ["a"], "covariance": ["a"]}],
        "verify": True,
    }
    joined = client.post("/lattice/join", json=body).json()
    assert joined == {"kernel": ["a", "b"], "covariance": ["a", "b"], "oracle_agrees": True}
    met = client.post("/lattice/meet", json=body).json()
    assert met["kernel"] == [] and met["covariance"] == []


def test_join_requires_pairs(client):
    resp = client.post("/lattice/join", json={"graph": G2, "pairs": []})
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "validation_error"


def test_invalid_pair_is_422(client):
    resp = client.post("/lattice/join", json={"graph": G2, "pairs": [{"covariance": ["a"]}]})
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "invalid_pair"


def test_morphism(client):
    resp = client.post(
        "/lattice/morphism", json={"graph": G2, "source": {}, "target_kernel": ["a"]}
    )
    assert resp.json() == {"exists": True, "pair": {"kernel": ["a"], "covariance": ["a"]}}
    resp = client.post(
        "/lattice/morphism/max",
        json={"graph": G2, "kernel": [], "target": {"kernel": ["a"], "covariance": ["a"]}},
    )
    assert resp.json() == {"kernel": [], "covariance": []}


def test_dilate_json_and_dot(client):
    doc = client.post("/lattice/dilate", json={"graph": G3, "pair": {}}).json()
    assert doc["copy_map"] == {"a": "a#copy"}
    resp = client.post("/lattice/dilate", json={"graph": G3, "pair": {}, "format": "dot"})
    assert resp.status_code == 200
    assert resp.text.startswith("digraph dilation {")


def test_realize(client):
    resp = client.post("/lattice/realize", json={"graph": G2, "pair": {"covariance": ["b"]}})
    assert resp.status_code == 200, resp.text
    assert resp.json()["dims"] == {"toeplitz": 5, "ideal": 1, "quotient": 4, "center": 1}


def test_realize_cyclic_is_409(client):
    resp = client.post("/lattice/realize", json={"graph": G3, "pair": {}})
    assert resp.status_code == 409
    assert resp.json()["error"]["code"] == "acyclic_required"


def test_fock_default_truncation_for_cycles(client):
    resp = client.post("/lattice/fock", json={"graph": G3})
    assert resp.status_code == 200, resp.text
    extra = resp.json()["extra"]
    assert extra["truncation"] == 4
    assert extra["ok"] is True


def test_fock_rejects_negative_truncation(client):
    resp = client.post("/lattice/fock", json={"graph": G3, "truncation": -1})
    assert resp.status_code == 422


def test_lattice_dot(client):
    resp = client.get("/lattice/dot", params={"name": "G2"})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/vnd.graphviz")
    assert "p0 -> p1;" in resp.text


def test_lattice_dot_unknown_name(client):
    resp = client.get("/lattice/dot", params={"name": "nope"})
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "unknown_corpus_graph"
