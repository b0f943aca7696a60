import pytest

from app.domain import corpus
from app.domain.errors import InvalidInput
from app.domain.ideal_structure import (
    Pair,
    hereditary_closure,
    hereditary_sets,
    is_hereditary,
    is_hilbert_bimodule,
    is_saturated,
    katsura_ideal_from_preimage,
    katsura_ideal_of_kernel,
    kernel_preimage,
    pair_from_document,
    pair_intrinsic_view,
    quotient_graph,
    receivers,
    regular_vertices,
    sources,
    to_tpair,
    validate_pair,
    vertex_set_from_document,
)


def test_hereditary_g1(g1):
    """b recebe z de a: qualquer hereditário com b contém a."""
    assert is_hereditary(g1, [])
    assert is_hereditary(g1, ["a"])
    assert not is_hereditary(g1, ["b"])
    assert hereditary_closure(g1, ["b"]) == frozenset({"a", "b"})
    assert hereditary_sets(g1) == [frozenset(), frozenset({"a"}), frozenset({"a", "b"})]


def test_hereditary_unknown_vertex(g2):
    with pytest.raises(InvalidInput) as exc:
        is_hereditary(g2, ["q"])
    assert exc.value.code == "unknown_vertex"


def test_regular_and_sources(g1, g2, single_vertex):
    assert regular_vertices(g1) == frozenset({"a", "b"})
    assert regular_vertices(g2) == frozenset({"b"})
    assert sources(g2) == frozenset({"a"})
    assert receivers(g2) == frozenset({"b"})
    assert regular_vertices(single_vertex) == frozenset()


def test_quotient_graph_g2(g2):
    q = quotient_graph(g2, ["a"]).quotient
    assert q.vertices == ("b",)
    assert q.edges == ()
    assert regular_vertices(q) == frozenset()


def test_quotient_rejects_non_hereditary(g2):
    with pytest.raises(InvalidInput) as exc:
        quotient_graph(g2, ["b"])
    assert exc.value.code == "non_hereditary_kernel"
    assert exc.value.details["missing"] == ["a"]


def test_katsura_ideal_of_kernel(g1, g2):
    assert katsura_ideal_of_kernel(g2, []) == frozenset({"b"})
    assert katsura_ideal_of_kernel(g2, ["a"]) == frozenset({"a"})
    assert katsura_ideal_of_kernel(g1, ["a"]) == frozenset({"a", "b"})


def test_validate_pair_diagnostics(g2):
    assert validate_pair(g2, Pair.of([], ["b"])).valid
    bad = validate_pair(g2, Pair.of([], ["a"]))
    assert not bad.valid
    assert bad.diagnostics == ["covariance_exceeds_katsura_ideal: a"]
    not_hereditary = validate_pair(g2, Pair.of(["b"], ["b"]))
    assert not not_hereditary.valid
    assert not_hereditary.diagnostics[0].startswith("kernel_not_hereditary")
    outside = validate_pair(g2, Pair.of(["a"], []))
    assert "kernel_not_in_covariance: a" in outside.diagnostics


def test_tpair_certificate(g1):
    t = to_tpair(g1, Pair.of(["a"], ["a", "b"]))
    assert t.kernel == frozenset({"a"})
    assert t.katsura_ideal == frozenset({"a", "b"})
    with pytest.raises(InvalidInput) as exc:
        to_tpair(g1, Pair.of(["b"], ["b"]))
    assert exc.value.code == "non_hereditary_kernel"


def test_tpair_certificate_rejects_covariance_outside_katsura_ideal(g2):
    """Em G2, ``a`` é fonte: nunca entra em ``J(∅)``."""
    with pytest.raises(InvalidInput) as exc:
        to_tpair(g2, Pair.of([], ["a"]))
    assert exc.value.code == "invalid_pair"
    assert exc.value.details == {"outside_covariance": [], "outside_katsura_ideal": ["a"]}
    with pytest.raises(InvalidInput) as exc:
        to_tpair(g2, Pair.of(["a"], []))
    assert exc.value.details["outside_covariance"] == ["a"]


def test_kernel_preimage_g2(g2):
    # a é fonte (vacuamente no pré-imagem); b só recebe de a
    assert kernel_preimage(g2, []) == frozenset({"a"})
    assert kernel_preimage(g2, ["a"]) == frozenset({"a", "b"})
    assert katsura_ideal_from_preimage(g2, []) == frozenset({"b"})
    assert katsura_ideal_from_preimage(g2, ["a"]) == frozenset({"a"})


def test_intrinsic_view(g1):
    kernel, covariance = pair_intrinsic_view(g1, Pair.of(["a"], ["a", "b"]))
    assert kernel == frozenset({"a"})
    assert covariance == frozenset({"b"})


def test_is_saturated_g2(g2, g1):
    """{a} em G2 mata a única aresta que chega em b."""
    assert not is_saturated(g2, ["a"])
    assert is_saturated(g2, [])
    assert is_saturated(g1, ["a"])


def test_pair_document_io(g2):
    p = pair_from_document(g2, '{"kernel": [], "covariance": ["b"]}')
    assert p == Pair.of([], ["b"])
    assert p.to_document().model_dump() == {"kernel": [], "covariance": ["b"]}
    assert str(p) == "K={} I={b}"
    with pytest.raises(InvalidInput) as exc:
        pair_from_document(g2, {"kernel": ["q"], "covariance": []})
    assert exc.value.code == "unknown_vertex"
    with pytest.raises(InvalidInput) as exc:
        pair_from_document(g2, "[1, 2]")
    assert exc.value.code == "invalid_document"


def test_vertex_set_document(g2):
    assert vertex_set_from_document(g2, '["a"]') == frozenset({"a"})
    with pytest.raises(InvalidInput):
        vertex_set_from_document(g2, '{"a": 1}')


def test_hilbert_bimodule_predicate(g1, g2, g3, cycle):
    assert is_hilbert_bimodule(g2)
    assert is_hilbert_bimodule(g3)
    assert is_hilbert_bimodule(cycle)
    # b recebe duas arestas
    assert not is_hilbert_bimodule(g1)


@pytest.mark.parametrize("name", sorted(corpus.NAMED))
def test_katsura_ideal_forms_agree_on_named_graphs(name):
    g = corpus.NAMED[name]
    for kernel in hereditary_sets(g):
        assert katsura_ideal_from_preimage(g, kernel) == katsura_ideal_of_kernel(g, kernel)
