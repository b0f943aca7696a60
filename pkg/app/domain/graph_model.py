"""Modelo de grafo dirigido finito no formato de correspondência.

Convenção (fixa em todo o pacote):

===================  =============================================
ação à esquerda      vértice ``v`` age na aresta ``e`` pelo RANGE
produto interno      ``<e, e> = src(e)`` (pareamento pela SOURCE)
caminho e1...en      ``src(e_i) == rng(e_(i+1))``
range(caminho)       ``rng(e1)``
source(caminho)      ``src(en)``
===================  =============================================

Boa parte da literatura de grafos usa a convenção oposta; aqui "incoming"
sempre significa arestas com ``rng(e) == v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Tuple

import networkx as nx
from pydantic import ValidationError

from app.domain.errors import InvalidInput, UnsupportedComputation
from app.domain.schemas import EdgeDocument, GraphDocument

VertexSet = FrozenSet[str]


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    rng: str


@dataclass(frozen=True)
class Path:
    """Caminho composável; comprimento 0 é um vértice (range == source)."""

    edges: Tuple[str, ...]
    range: str
    source: str

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def label(self) -> str:
        return ".".join(self.edges) if self.edges else self.range

    @property
    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (self.length, self.edges if self.edges else (self.range,))


@dataclass(frozen=True)
class Graph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                raise InvalidInput("duplicate_vertex_id", f"vertex id repeated: {v}", {"id": v})
            seen.add(v)
        seen_edges: set[str] = set()
        for e in self.edges:
            if e.id in seen_edges:
                raise InvalidInput("duplicate_edge_id", f"edge id repeated: {e.id}", {"id": e.id})
            seen_edges.add(e.id)
            for endpoint in (e.src, e.rng):
                if endpoint not in seen:
                    raise InvalidInput(
                        "dangling_edge_endpoint",
                        f"edge {e.id} points to unknown vertex: {endpoint}",
                        {"edge": e.id, "vertex": endpoint},
                    )

    # ---- índices (calculados sob demanda, o valor é imutável) ----
    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    @cached_property
    def edge_by_id(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incoming(self) -> Dict[str, Tuple[Edge, ...]]:
        acc: Dict[str, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            acc[e.rng].append(e)
        return {v: tuple(es) for v, es in acc.items()}

    @cached_property
    def _outgoing(self) -> Dict[str, Tuple[Edge, ...]]:
        acc: Dict[str, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            acc[e.src].append(e)
        return {v: tuple(es) for v, es in acc.items()}

    def incoming_edges(self, v: str) -> Tuple[Edge, ...]:
        self.require_vertex(v)
        return self._incoming[v]

    def outgoing_edges(self, v: str) -> Tuple[Edge, ...]:
        self.require_vertex(v)
        return self._outgoing[v]

    def require_vertex(self, v: str) -> None:
        if v not in self.vertex_set:
            raise InvalidInput("unknown_vertex", f"unknown vertex: {v}", {"vertex": v})

    def require_subset(self, s: Iterable[str]) -> VertexSet:
        members = frozenset(s)
        unknown = sorted(members - self.vertex_set)
        if unknown:
            raise InvalidInput(
                "unknown_vertex", f"unknown vertex: {unknown[0]}", {"vertices": unknown}
            )
        return members

    def to_document(self) -> GraphDocument:
        return GraphDocument(
            vertices=list(self.vertices),
            edges=[EdgeDocument(id=e.id, src=e.src, rng=e.rng) for e in self.edges],
        )


def graph_from_document(doc: GraphDocument) -> Graph:
    return Graph(
        vertices=tuple(doc.vertices),
        edges=tuple(Edge(id=e.id, src=e.src, rng=e.rng) for e in doc.edges),
    )


def parse_graph(document: str | bytes | Mapping[str, Any]) -> Graph:
    try:
        if isinstance(document, (str, bytes)):
            doc = GraphDocument.model_validate_json(document)
        else:
            doc = GraphDocument.model_validate(document)
    except ValidationError as e:
        raise InvalidInput(
            "invalid_document", "malformed graph document", e.errors(include_url=False)
        )
    return graph_from_document(doc)


def serialize_graph(g: Graph) -> str:
    return g.to_document().model_dump_json()


def incoming(g: Graph, v: str) -> FrozenSet[str]:
    return frozenset(e.id for e in g.incoming_edges(v))


def outgoing(g: Graph, v: str) -> FrozenSet[str]:
    return frozenset(e.id for e in g.outgoing_edges(v))


def to_networkx(g: Graph) -> nx.MultiDiGraph:
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(g.vertices)
    for e in g.edges:
        dg.add_edge(e.src, e.rng, key=e.id)
    return dg


def is_acyclic(g: Graph) -> bool:
    # laço (src == rng) conta como ciclo
    return nx.is_directed_acyclic_graph(to_networkx(g))


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    kept = g.require_subset(keep)
    return Graph(
        vertices=tuple(v for v in g.vertices if v in kept),
        edges=tuple(e for e in g.edges if e.src in kept and e.rng in kept),
    )


def paths_up_to(g: Graph, n: int) -> List[Path]:
    """Todos os caminhos composáveis de comprimento <= n, ordem (comprimento, ids)."""
    if n < 0:
        raise InvalidInput("invalid_length", "maximum path length must be non-negative", {"n": n})
    level = sorted(
        (Path(edges=(), range=v, source=v) for v in g.vertices), key=lambda p: p.sort_key
    )
    out: List[Path] = list(level)
    for _ in range(n):
        nxt: List[Path] = []
        for p in level:
            # prepend: e.p exige src(e) == range(p)
            for e in g.outgoing_edges(p.range):
                nxt.append(Path(edges=(e.id,) + p.edges, range=e.rng, source=p.source))
        if not nxt:
            break
        nxt.sort(key=lambda p: p.sort_key)
        out.extend(nxt)
        level = nxt
    return out


def all_paths(g: Graph) -> List[Path]:
    """Base completa de caminhos; só existe (finita) para grafos acíclicos."""
    if not is_acyclic(g):
        raise UnsupportedComputation(
            "acyclic_required", "acyclic required: path basis is infinite for cyclic graphs"
        )
    return paths_up_to(g, max(len(g.vertices) - 1, 0))


def is_composable(g: Graph, p: Path) -> bool:
    if not p.edges:
        return p.range == p.source and p.range in g.vertex_set
    try:
        chain = [g.edge_by_id[eid] for eid in p.edges]
    except KeyError:
        return False
    for left, right in zip(chain, chain[1:]):
        if left.src != right.rng:
            return False
    return chain[0].rng == p.range and chain[-1].src == p.source


def dot_quote(s: str) -> str:
    """Literal DOT entre aspas; ids são texto livre e podem conter aspas ou barras."""
    escaped = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def graph_to_dot(g: Graph, name: str = "G") -> str:
    """DOT determinístico: vértices e arestas por id."""
    lines = [f"digraph {name} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {dot_quote(v)};")
    for e in sorted(g.edges, key=lambda e: e.id):
        lines.append(f"  {dot_quote(e.src)} -> {dot_quote(e.rng)} [label={dot_quote(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
