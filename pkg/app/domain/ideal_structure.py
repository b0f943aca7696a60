"""Conjuntos hereditários, vértices regulares, grafos quociente e pares kernel-covariância.

Pares são guardados sempre na forma pullback ``(K, I ∪ K)``: a ordem entre
pares vira inclusão pura de conjuntos.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Tuple

from pydantic import ValidationError

from app.domain.errors import InvalidInput
from app.domain.graph_model import Graph, VertexSet
from app.domain.schemas import PairDocument


def set_key(s: Iterable[str]) -> Tuple[int, Tuple[str, ...]]:
    members = tuple(sorted(s))
    return (len(members), members)


@dataclass(frozen=True)
class Pair:
    kernel: VertexSet
    covariance: VertexSet

    @classmethod
    def of(cls, kernel: Iterable[str] = (), covariance: Iterable[str] = ()) -> "Pair":
        return cls(kernel=frozenset(kernel), covariance=frozenset(covariance))

    @classmethod
    def bottom(cls) -> "Pair":
        return cls(kernel=frozenset(), covariance=frozenset())

    @classmethod
    def top(cls, g: Graph) -> "Pair":
        return cls(kernel=g.vertex_set, covariance=g.vertex_set)

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return (*set_key(self.kernel), *set_key(self.covariance))

    def to_document(self) -> PairDocument:
        return PairDocument(kernel=sorted(self.kernel), covariance=sorted(self.covariance))

    def __str__(self) -> str:
        return f"K={{{','.join(sorted(self.kernel))}}} I={{{','.join(sorted(self.covariance))}}}"


@dataclass(frozen=True)
class QuotientData:
    quotient: Graph
    vertex_map: Dict[str, str]
    edge_map: Dict[str, str]


@dataclass(frozen=True)
class PairValidation:
    valid: bool
    diagnostics: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class TPair:
    """Par na forma de Katsura, com o certificado ``K ⊆ T ⊆ J(K)`` já conferido."""

    kernel: VertexSet
    t_ideal: VertexSet
    katsura_ideal: VertexSet


# ---- heredidade ----
def is_hereditary(g: Graph, s: Iterable[str]) -> bool:
    members = g.require_subset(s)
    return all(e.src in members for e in g.edges if e.rng in members)


def is_invariant(g: Graph, s: Iterable[str]) -> bool:
    """Forma invariante ``<X, K X> ⊆ K``: os vértices de produto interno ficam em ``s``."""
    members = g.require_subset(s)
    inner = {e.src for e in g.edges if e.rng in members}
    return inner <= members


def is_hereditary_module_form(g: Graph, s: Iterable[str]) -> bool:
    """Forma de módulos ``K X ⊆ X K``: ``ℓ²(E) · s`` contém ``s · ℓ²(E)``."""
    members = g.require_subset(s)
    left = {e.id for e in g.edges if e.rng in members}
    right = {e.id for e in g.edges if e.src in members}
    return left <= right


def hereditary_closure(g: Graph, s: Iterable[str]) -> VertexSet:
    closed = set(g.require_subset(s))
    stack = list(closed)
    while stack:
        v = stack.pop()
        for e in g.incoming_edges(v):
            if e.src not in closed:
                closed.add(e.src)
                stack.append(e.src)
    return frozenset(closed)


def hereditary_sets(g: Graph) -> List[VertexSet]:
    """Todos os hereditários, ordem (cardinalidade, lexicográfica).

    Varredura dirigida por fecho: cada hereditário é alcançado a partir de um
    menor somando o fecho de um vértice, então só conjuntos já hereditários
    entram na fila.
    """
    found: set[VertexSet] = {frozenset()}
    frontier: List[VertexSet] = [frozenset()]
    singles = {v: hereditary_closure(g, [v]) for v in g.vertices}
    while frontier:
        nxt: List[VertexSet] = []
        for h in frontier:
            for v in g.vertices:
                if v in h:
                    continue
                bigger = h | singles[v]
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=set_key)


def is_saturated(g: Graph, k: Iterable[str]) -> bool:
    """Todo vértice fora de ``k`` que era regular continua regular no quociente."""
    kernel = g.require_subset(k)
    return regular_vertices(g) - kernel <= regular_vertices(_complement_graph(g, kernel))


# ---- fontes e regulares ----
def sources(g: Graph) -> VertexSet:
    return frozenset(v for v in g.vertices if not g.incoming_edges(v))


def receivers(g: Graph) -> VertexSet:
    return g.vertex_set - sources(g)


def regular_vertices(g: Graph) -> VertexSet:
    # grafo finito: 0 < |incoming| < ∞ coincide com receivers
    return receivers(g)


# ---- quocientes ----
def _complement_graph(g: Graph, kernel: VertexSet) -> Graph:
    return Graph(
        vertices=tuple(v for v in g.vertices if v not in kernel),
        edges=tuple(e for e in g.edges if e.src not in kernel and e.rng not in kernel),
    )


def require_hereditary(g: Graph, k: Iterable[str]) -> VertexSet:
    kernel = g.require_subset(k)
    if not is_hereditary(g, kernel):
        missing = sorted(hereditary_closure(g, kernel) - kernel)
        raise InvalidInput(
            "non_hereditary_kernel",
            f"kernel is not hereditary, missing: {','.join(missing)}",
            {"kernel": sorted(kernel), "missing": missing},
        )
    return kernel


def quotient_graph(g: Graph, k: Iterable[str]) -> QuotientData:
    kernel = require_hereditary(g, k)
    quotient = Graph(
        vertices=tuple(v for v in g.vertices if v not in kernel),
        # heredidade garante rng(e) fora do kernel quando src(e) está fora
        edges=tuple(e for e in g.edges if e.src not in kernel),
    )
    return QuotientData(
        quotient=quotient,
        vertex_map={v: v for v in quotient.vertices},
        edge_map={e.id: e.id for e in quotient.edges},
    )


def katsura_ideal_of_kernel(g: Graph, k: Iterable[str]) -> VertexSet:
    kernel = require_hereditary(g, k)
    return kernel | regular_vertices(quotient_graph(g, kernel).quotient)


def kernel_preimage(g: Graph, k: Iterable[str]) -> VertexSet:
    """Vértices cuja ação à esquerda cai no ideal de ``k``: toda aresta que chega sai de ``k``."""
    kernel = g.require_subset(k)
    return frozenset(
        v for v in g.vertices if all(e.src in kernel for e in g.incoming_edges(v))
    )


def katsura_ideal_from_preimage(g: Graph, k: Iterable[str]) -> VertexSet:
    """``J(K) = K ∪ (receivers ∖ X⁻¹(K))``, montado direto da ação à esquerda."""
    kernel = require_hereditary(g, k)
    return kernel | (receivers(g) - kernel_preimage(g, kernel))


# ---- pares ----
def validate_pair(g: Graph, p: Pair) -> PairValidation:
    kernel = g.require_subset(p.kernel)
    covariance = g.require_subset(p.covariance)
    diagnostics: List[str] = []
    if not is_hereditary(g, kernel):
        missing = sorted(hereditary_closure(g, kernel) - kernel)
        diagnostics.append(f"kernel_not_hereditary: closure adds {','.join(missing)}")
    if not kernel <= covariance:
        outside = sorted(kernel - covariance)
        diagnostics.append(f"kernel_not_in_covariance: {','.join(outside)}")
    allowed = kernel | regular_vertices(_complement_graph(g, kernel))
    exceeding = sorted(covariance - allowed)
    if exceeding:
        diagnostics.append(f"covariance_exceeds_katsura_ideal: {','.join(exceeding)}")
    return PairValidation(valid=not diagnostics, diagnostics=diagnostics)


def require_valid_pair(g: Graph, p: Pair) -> Pair:
    report = validate_pair(g, p)
    if not report.valid:
        raise InvalidInput("invalid_pair", f"invalid pair {p}", report.diagnostics)
    return p


def to_tpair(g: Graph, p: Pair) -> TPair:
    kernel = require_hereditary(g, p.kernel)
    covariance = g.require_subset(p.covariance)
    jk = katsura_ideal_from_preimage(g, kernel)
    if not (kernel <= covariance <= jk):
        raise InvalidInput(
            "invalid_pair",
            f"certificate failed for {p}",
            {
                "outside_covariance": sorted(kernel - covariance),
                "outside_katsura_ideal": sorted(covariance - jk),
            },
        )
    return TPair(kernel=kernel, t_ideal=covariance, katsura_ideal=jk)


def pair_intrinsic_view(g: Graph, p: Pair) -> Tuple[VertexSet, VertexSet]:
    require_valid_pair(g, p)
    return p.kernel, p.covariance - p.kernel


def pair_from_document(g: Graph, document: str | bytes | Mapping[str, Any] | PairDocument) -> Pair:
    try:
        if isinstance(document, PairDocument):
            doc = document
        elif isinstance(document, (str, bytes)):
            doc = PairDocument.model_validate_json(document)
        else:
            doc = PairDocument.model_validate(document)
    except ValidationError as e:
        raise InvalidInput(
            "invalid_document", "malformed pair document", e.errors(include_url=False)
        )
    return Pair(kernel=g.require_subset(doc.kernel), covariance=g.require_subset(doc.covariance))


def vertex_set_from_document(g: Graph, document: str | bytes | Iterable[str]) -> VertexSet:
    if isinstance(document, (str, bytes)):
        try:
            raw = json.loads(document)
        except ValueError:
            raise InvalidInput("invalid_document", "vertex set must be a JSON list")
        if not isinstance(raw, list) or any(not isinstance(v, str) for v in raw):
            raise InvalidInput("invalid_document", "vertex set must be a JSON list of strings")
        return g.require_subset(raw)
    return g.require_subset(document)


# ---- bimódulos de Hilbert ----
def is_hilbert_bimodule(g: Graph) -> bool:
    """Bijeção parcial nos vértices: no máximo uma aresta entrando e uma saindo."""
    return all(len(g.incoming_edges(v)) <= 1 and len(g.outgoing_edges(v)) <= 1 for v in g.vertices)

