import json
from pathlib import Path

import pytest

from app.cli import main, run
from app.domain.graph_model import Edge, Graph

G2_LATTICE = (
    '{"covers":[[0,1],[0,2],[1,3],[2,3]],"pairs":['
    '{"covariance":[],"kernel":[]},'
    '{"covariance":["b"],"kernel":[]},'
    '{"covariance":["a"],"kernel":["a"]},'
    '{"covariance":["a","b"],"kernel":["a","b"]}]}\n'
)


def _json(result):
    return json.loads(result.render())


def test_check_ok(g1, graph_file):
    result = run(["check", graph_file(g1)])
    assert result.exit_code == 0
    assert _json(result) == {
        "valid": True,
        "vertices": 2,
        "edges": 3,
        "acyclic": False,
        "regular": ["a", "b"],
    }


def test_check_dangling_edge(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        '{"vertices": ["a", "b"], "edges": [{"id": "z", "src": "a", "rng": "c"}]}',
        encoding="utf-8",
    )
    result = run(["check", str(path)])
    assert result.exit_code == 1
    error = _json(result)["error"]
    assert error["code"] == "dangling_edge_endpoint"
    assert error["details"]["vertex"] == "c"


def test_check_edges_without_vertices():
    result = run(["check", '{"vertices": [], "edges": [{"id": "z", "src": "a", "rng": "a"}]}'])
    assert result.exit_code == 1


def test_check_missing_file(tmp_path):
    result = run(["check", str(tmp_path / "nope.json")])
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "graph_file_not_found"


def test_check_invalid_utf8_file(tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"vertices":["\xff"],"edges":[]}')
    result = run(["check", str(path)])
    assert result.exit_code == 1
    error = _json(result)["error"]
    assert error["code"] == "invalid_document"
    assert error["details"] == {"path": str(path), "offset": 14}


def test_unreadable_pair_file(tmp_path, monkeypatch):
    path = tmp_path / "pair.json"
    path.write_text("{}", encoding="utf-8")

    def denied(self, *args, **kwargs):
        raise PermissionError(13, "Permission denied")

    monkeypatch.setattr(Path, "read_text", denied)
    result = run(["realize", "corpus:G2", "--pair", str(path)])
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "pair_file_unreadable"


def test_lattice_too_large_exit_two():
    looped = {
        "vertices": [f"v{i}" for i in range(8)],
        "edges": [{"id": f"l{i}", "src": f"v{i}", "rng": f"v{i}"} for i in range(8)],
    }
    result = run(["lattice", json.dumps(looped)])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "lattice_too_large"


def test_lattice_g1(g1, graph_file):
    doc = _json(run(["lattice", graph_file(g1)]))
    assert len(doc["pairs"]) == 7
    assert len(doc["covers"]) == 8


def test_lattice_g2_golden(g2, graph_file):
    assert run(["lattice", graph_file(g2)]).render() == G2_LATTICE


def test_lattice_single_vertex():
    doc = _json(run(["lattice", "corpus:single_vertex"]))
    assert doc["pairs"] == [
        {"kernel": [], "covariance": []},
        {"kernel": ["a"], "covariance": ["a"]},
    ]


@pytest.mark.parametrize(
    "argv",
    [
        ["lattice", "corpus:G2", "--format", "dot"],
        ["--format", "dot", "lattice", "corpus:G2"],
    ],
)
def test_lattice_dot(argv):
    text = run(argv).render()
    assert text.startswith("digraph pairs {\n")
    assert '  p3 [label="K={a,b} I={a,b}"];\n' in text
    assert "  p2 -> p3;\n" in text


def test_meet_join_verify_g2():
    pairs = ["--pair", '{"covariance": ["b"]}', "--pair", '{"kernel": ["a"], "covariance": ["a"]}']
    joined = _json(run(["join", "corpus:G2", *pairs, "--verify"]))
    assert joined == {"kernel": ["a", "b"], "covariance": ["a", "b"], "oracle_agrees": True}
    met = _json(run(["meet", "corpus:G2", *pairs, "--verify"]))
    assert met == {"kernel": [], "covariance": [], "oracle_agrees": True}


def test_meet_without_pairs():
    result = run(["meet", "corpus:G2"])
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "empty_pair_list"


def test_invalid_pair_rejected():
    result = run(["join", "corpus:G2", "--pair", '{"covariance": ["a"]}'])
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "invalid_pair"


def test_morphism_exists_and_missing():
    found = _json(run(["morphism", "corpus:G2", "--from", "{}", "--to-kernel", '["a"]']))
    assert found == {"exists": True, "pair": {"kernel": ["a"], "covariance": ["a"]}}
    missing = _json(
        run(["morphism", "corpus:G2", "--from", '{"covariance": ["b"]}', "--to-kernel", '["a"]'])
    )
    assert missing == {"exists": False, "pair": None, "target_kernel_saturated": False}


def test_morphism_max_covariance():
    doc = _json(
        run(
            [
                "morphism",
                "corpus:G1",
                "--kernel",
                "[]",
                "--to",
                '{"kernel": ["a"], "covariance": ["a", "b"]}',
            ]
        )
    )
    assert doc == {"kernel": [], "covariance": ["a", "b"]}


def test_morphism_requires_direction():
    result = run(["morphism", "corpus:G2", "--from", "{}"])
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "invalid_arguments"


def test_dilate_g3_golden():
    doc = _json(run(["dilate", "corpus:G3", "--pair", "{}"]))
    assert doc == {
        "graph": {
            "vertices": ["a", "a#copy"],
            "edges": [
                {"id": "x", "src": "a", "rng": "a"},
                {"id": "x#copy", "src": "a#copy", "rng": "a"},
            ],
        },
        "vertex_map": {"a": "a"},
        "copy_map": {"a": "a#copy"},
        "edge_map": {"x": "x"},
        "copy_edge_map": {"x": "x#copy"},
    }


def test_dilate_dot():
    text = run(["dilate", "corpus:G3", "--pair", "{}", "--format", "dot"]).render()
    assert text.startswith("digraph dilation {\n")
    assert '"a#copy" -> "a" [label="x#copy"];' in text


def test_realize_g2(g2, graph_file, tmp_path):
    pair = tmp_path / "pair.json"
    pair.write_text('{"kernel": [], "covariance": ["b"]}', encoding="utf-8")
    doc = _json(run(["realize", graph_file(g2), "--pair", str(pair)]))
    assert doc["dims"] == {"toeplitz": 5, "ideal": 1, "quotient": 4, "center": 1}
    assert doc["extra"]["pair"] == {"kernel": [], "covariance": ["b"]}


def test_realize_verify_g2():
    doc = _json(run(["realize", "corpus:G2", "--pair", '{"covariance": ["b"]}', "--verify"]))
    assert doc["extra"]["kernel_intersection"] == 0
    assert doc["extra"]["covariance_intersection"] == 1
    assert doc["extra"]["recovered"] is True


def test_realize_cyclic_is_unsupported(g3, graph_file):
    result = run(["realize", graph_file(g3), "--pair", "{}"])
    assert result.exit_code == 2
    error = _json(result)["error"]
    assert error["code"] == "acyclic_required"
    assert "acyclic required" in error["message"]


def test_fock_g3_truncated_verify():
    doc = _json(run(["fock", "corpus:G3", "--truncate", "3", "--verify"]))
    assert doc["extra"]["ok"] is True
    assert doc["extra"]["truncation"] == 3
    assert [c["level"] for c in doc["extra"]["embedding"]] == [1, 2]
    assert all(c["ok"] for c in doc["extra"]["embedding"])
    assert {r["name"] for r in doc["relations"]} >= {"edge_isometry", "vertex_partition"}


def test_fock_acyclic_untruncated(g2, graph_file):
    doc = _json(run(["fock", graph_file(g2)]))
    assert doc["extra"]["basis_size"] == 3
    assert doc["extra"]["truncation"] is None


def test_fock_acyclic_untruncated_verify_checks_every_level():
    """Sem ``--truncate``, um acíclico é checado até |V|, que já contém todos os caminhos."""
    doc = _json(run(["fock", "corpus:chain", "--verify"]))
    assert doc["extra"]["truncation"] is None
    assert doc["extra"]["embedding_truncation"] == 3
    assert doc["extra"]["embedding"] == [
        {"level": 1, "units": 1, "ok": True},
        {"level": 2, "units": 0, "ok": True},
    ]
    g2 = _json(run(["fock", "corpus:G2", "--verify"]))
    assert g2["extra"]["embedding"] == [{"level": 1, "units": 0, "ok": True}]


def test_corpus_listing():
    doc = _json(run(["corpus"]))
    assert {"G1", "G2", "G3"} <= set(doc["graphs"])
    assert _json(run(["corpus", "--name", "G2"])) == {
        "vertices": ["a", "b"],
        "edges": [{"id": "z", "src": "a", "rng": "b"}],
    }
    unknown = run(["corpus", "--name", "G9"])
    assert unknown.exit_code == 1
    assert _json(unknown)["error"]["code"] == "unknown_corpus_graph"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["realize", "corpus:G2"],
        ["fock", "corpus:G3", "--truncate", "abc"],
    ],
)
def test_bad_arguments_exit_one(argv):
    result = run(argv)
    assert result.exit_code == 1
    assert _json(result)["error"]["code"] == "invalid_arguments"


def test_main_writes_stdout(capsys):
    code = main(["lattice", "corpus:G2"])
    assert code == 0
    assert capsys.readouterr().out == G2_LATTICE


def test_main_exit_code_unsupported(capsys, graph_file):
    cyclic = Graph(vertices=("a",), edges=(Edge("x", "a", "a"),))
    assert main(["realize", graph_file(cyclic), "--pair", "{}"]) == 2
    assert '"acyclic_required"' in capsys.readouterr().out
