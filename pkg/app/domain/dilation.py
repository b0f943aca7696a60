"""Dilatação de Katsura: realiza ``O(K, I)`` como álgebra absoluta de um grafo maior.

Primeiro o quociente pelo kernel, depois a dilatação: cada regular fora da
covariância ganha uma cópia ``v#copy``, e cada aresta que sai de um desses
vértices ganha uma cópia que sai da cópia e aponta para o vértice original.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import structlog

from app.domain.errors import InvalidInput
from app.domain.fock.engine import Realization, relative_cp_dimension
from app.domain.graph_model import Edge, Graph, induced_subgraph
from app.domain.ideal_structure import Pair, quotient_graph, regular_vertices, require_valid_pair
from app.domain.schemas import DilationDocument

log = structlog.get_logger()

COPY_SUFFIX = "#copy"


@dataclass(frozen=True)
class DilationResult:
    graph: Graph
    original_vertex_map: Dict[str, str]
    copy_vertex_map: Dict[str, str]
    original_edge_map: Dict[str, str]
    copy_edge_map: Dict[str, str]

    @property
    def absolute_pair(self) -> Pair:
        return Pair(kernel=frozenset(), covariance=regular_vertices(self.graph))

    def to_document(self) -> DilationDocument:
        return DilationDocument(
            graph=self.graph.to_document(),
            vertex_map=dict(sorted(self.original_vertex_map.items())),
            copy_map=dict(sorted(self.copy_vertex_map.items())),
            edge_map=dict(sorted(self.original_edge_map.items())),
            copy_edge_map=dict(sorted(self.copy_edge_map.items())),
        )


@dataclass(frozen=True)
class AbsoluteCheck:
    relative: Realization
    absolute: Realization

    @property
    def ok(self) -> bool:
        return (
            self.relative.dimension == self.absolute.dimension
            and self.relative.center == self.absolute.center
        )


@dataclass(frozen=True)
class MinimalityReport:
    relative: Realization
    removals: Dict[str, Realization]

    @property
    def ok(self) -> bool:
        # cada cópia removida precisa quebrar a realização
        return all(
            r.dimension != self.relative.dimension or r.center != self.relative.center
            for r in self.removals.values()
        )


def copy_id(identifier: str) -> str:
    return f"{identifier}{COPY_SUFFIX}"


def katsura_dilation(g: Graph, p: Pair) -> DilationResult:
    require_valid_pair(g, p)
    quotient = quotient_graph(g, p.kernel).quotient
    covariance = p.covariance - p.kernel
    missing = regular_vertices(quotient) - covariance
    copied_vertices = [v for v in quotient.vertices if v in missing]
    copied_edges = [e for e in quotient.edges if e.src in missing]

    # vértices e arestas têm espaços de nomes separados
    vertex_clashes = {copy_id(v) for v in copied_vertices} & quotient.vertex_set
    edge_clashes = {copy_id(e.id) for e in copied_edges} & set(quotient.edge_by_id)
    clashes = sorted(vertex_clashes | edge_clashes)
    if clashes:
        raise InvalidInput(
            "copy_name_collision",
            f"identifier already used: {clashes[0]}",
            {"identifiers": clashes},
        )

    vertex_copies = {v: copy_id(v) for v in copied_vertices}
    edge_copies = {e.id: copy_id(e.id) for e in copied_edges}
    dilated = Graph(
        vertices=quotient.vertices + tuple(vertex_copies[v] for v in copied_vertices),
        edges=quotient.edges
        + tuple(
            Edge(id=edge_copies[e.id], src=vertex_copies[e.src], rng=e.rng) for e in copied_edges
        ),
    )
    log.info(
        "katsura_dilation_built",
        pair=str(p),
        copies=len(copied_vertices),
        copied_edges=len(copied_edges),
    )
    return DilationResult(
        graph=dilated,
        original_vertex_map={v: v for v in quotient.vertices},
        copy_vertex_map=vertex_copies,
        original_edge_map={e.id: e.id for e in quotient.edges},
        copy_edge_map=edge_copies,
    )


def dilation_is_absolute(g: Graph, p: Pair) -> AbsoluteCheck:
    """Compara ``O(g, p)`` com a álgebra absoluta do grafo dilatado (acíclicos)."""
    dilation = katsura_dilation(g, p)
    return AbsoluteCheck(
        relative=relative_cp_dimension(g, p),
        absolute=relative_cp_dimension(dilation.graph, dilation.absolute_pair),
    )


def dilation_is_minimal(g: Graph, p: Pair) -> MinimalityReport:
    dilation = katsura_dilation(g, p)
    relative = relative_cp_dimension(g, p)
    removals: Dict[str, Realization] = {}
    for original, copy in dilation.copy_vertex_map.items():
        kept = [v for v in dilation.graph.vertices if v != copy]
        smaller = induced_subgraph(dilation.graph, kept)
        removals[original] = relative_cp_dimension(
            smaller, Pair(kernel=frozenset(), covariance=regular_vertices(smaller))
        )
    return MinimalityReport(relative=relative, removals=removals)


def enlarge_until_stable(g: Graph, p: Pair, max_rounds: int = 8) -> Tuple[Graph, int]:
    """Laço genérico de aumento no nível do grafo.

    Cada rodada dilata pelo par corrente; o próximo par é sempre o absoluto
    ``(∅, regular)``. Para quando não há regular fora da covariância.
    """
    require_valid_pair(g, p)
    graph, pair, rounds = g, p, 0
    history: List[int] = []
    while True:
        quotient = quotient_graph(graph, pair.kernel).quotient
        if not (regular_vertices(quotient) - (pair.covariance - pair.kernel)) and not pair.kernel:
            break
        if rounds >= max_rounds:
            raise InvalidInput(
                "enlargement_not_stable", f"no fixed point after {max_rounds} rounds"
            )
        result = katsura_dilation(graph, pair)
        graph, pair = result.graph, result.absolute_pair
        rounds += 1
        history.append(len(graph.vertices))
    log.debug("enlargement_stable", rounds=rounds, sizes=history)
    return graph, rounds
